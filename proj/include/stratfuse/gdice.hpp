#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stratfuse/rng.hpp"

namespace stratfuse::gdice {

// The optimizer is generic over a product of independent categoricals: one
// row per decision variable, each with its own width.  Candidates are
// deterministic (one concrete choice per row); the stochastic view lives in
// the sampling distribution.
using RowWidths = std::vector<std::size_t>;
using CandidateWeights = std::vector<std::uint32_t>;

struct SamplingDistribution {
  std::vector<std::vector<double>> rows;

  static SamplingDistribution uniform(std::span<const std::size_t> widths);

  // Every row normalized within 1e-9, all entries >= 0.
  void validate() const;
};

// One independent draw per row.
CandidateWeights sample_candidate(const SamplingDistribution& dist, rng::Stream& stream);

// The distribution's concentration point: argmax per row, ties to the
// smallest index.  As the sampler converges this is the candidate the
// search believes in, independent of any single noisy evaluation.
CandidateWeights distribution_mode(const SamplingDistribution& dist);

// Smoothed maximum-likelihood refit: each row becomes
//   alpha * (elite empirical frequency) + (1 - alpha) * previous,
// then entries are floored at `floor` and the row renormalized.
SamplingDistribution update_distribution(const SamplingDistribution& dist,
                                         std::span<const CandidateWeights> elites,
                                         double alpha, double floor);

struct GDiceConfig {
  int iterations = 300;
  int samples_per_iteration = 50;
  int elite_count = 5;
  double learning_rate = 0.2;       // alpha in (0, 1]
  int episodes_per_evaluation = 30; // consumed by the evaluator closure
  double prob_floor = 1e-3;
  bool retain_best = true;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all available (parallel variant only)

  void validate() const;
};

struct CurvePoint {
  int iteration = 0;
  double best_so_far = 0.0;
  double iter_mean = 0.0;
  double iter_stderr = 0.0;
};
using LearningCurve = std::vector<CurvePoint>;

// Mean performance of a candidate.  `eval_seed` is shared by every candidate
// within an iteration (common random numbers), and pre-assigned, so candidate
// evaluations can run concurrently with schedule-independent results.
using Blackbox = std::function<double(const CandidateWeights&, std::uint64_t eval_seed)>;

struct OptimizeResult {
  CandidateWeights best;
  double best_value = 0.0;
  SamplingDistribution distribution;
  LearningCurve curve;
};

// Iterates sample -> evaluate -> select elites -> refit.  Elites are ranked
// by descending value with a lexicographic tie-break on the candidate
// encoding; with retain_best, the global best always joins the elite pool.
// optimize() evaluates candidates in parallel with OpenMP;
// optimize_serial() is the reference loop.  Both return identical results.
OptimizeResult optimize(const GDiceConfig& cfg, std::span<const std::size_t> widths,
                        const Blackbox& blackbox);
OptimizeResult optimize_serial(const GDiceConfig& cfg, std::span<const std::size_t> widths,
                               const Blackbox& blackbox);

}  // namespace stratfuse::gdice
