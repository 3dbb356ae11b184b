#include "stratfuse/gdice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stratfuse/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stratfuse::gdice {

SamplingDistribution SamplingDistribution::uniform(std::span<const std::size_t> widths) {
  SamplingDistribution d;
  d.rows.reserve(widths.size());
  for (std::size_t w : widths) {
    if (w < 1) throw ConfigError("SamplingDistribution: empty categorical row");
    d.rows.emplace_back(w, 1.0 / static_cast<double>(w));
  }
  return d;
}

void SamplingDistribution::validate() const {
  for (const auto& row : rows) {
    if (row.empty()) throw ConfigError("SamplingDistribution: empty row");
    double sum = 0.0;
    for (double p : row) {
      if (p < 0.0 || !std::isfinite(p)) throw ConfigError("SamplingDistribution: bad probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ConfigError("SamplingDistribution: row does not sum to 1");
  }
}

CandidateWeights sample_candidate(const SamplingDistribution& dist, rng::Stream& stream) {
  CandidateWeights w;
  w.reserve(dist.rows.size());
  for (const auto& row : dist.rows)
    w.push_back(static_cast<std::uint32_t>(stream.categorical(row)));
  return w;
}

CandidateWeights distribution_mode(const SamplingDistribution& dist) {
  CandidateWeights w;
  w.reserve(dist.rows.size());
  for (const auto& row : dist.rows) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i] > row[best]) best = i;
    w.push_back(static_cast<std::uint32_t>(best));
  }
  return w;
}

namespace {

// Pins every sub-floor entry at the floor and rescales the rest so the row
// sums to 1, growing the pinned set until stable (waterfill).  Rows with no
// sub-floor entry pass through untouched.
void floor_and_normalize(std::vector<double>& row, double floor) {
  const std::size_t w = row.size();
  std::vector<bool> pinned(w, false);
  bool any = false;
  for (std::size_t i = 0; i < w; ++i) {
    if (row[i] < floor) {
      pinned[i] = true;
      any = true;
    }
  }
  if (!any) return;

  for (std::size_t pass = 0; pass <= w; ++pass) {
    std::size_t count = 0;
    double free_sum = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      if (pinned[i]) ++count;
      else free_sum += row[i];
    }
    if (count == w || free_sum <= 0.0) {
      for (double& p : row) p = 1.0 / static_cast<double>(w);
      return;
    }
    double scale = (1.0 - floor * static_cast<double>(count)) / free_sum;
    bool grew = false;
    for (std::size_t i = 0; i < w; ++i) {
      if (pinned[i]) continue;
      if (row[i] * scale < floor) {
        pinned[i] = true;
        grew = true;
      }
    }
    if (!grew) {
      for (std::size_t i = 0; i < w; ++i) row[i] = pinned[i] ? floor : row[i] * scale;
      return;
    }
  }
}

}  // namespace

SamplingDistribution update_distribution(const SamplingDistribution& dist,
                                         std::span<const CandidateWeights> elites,
                                         double alpha, double floor) {
  if (elites.empty()) throw ConfigError("update_distribution: elite set is empty");
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("update_distribution: alpha outside [0,1]");
  SamplingDistribution next = dist;
  const double inv = 1.0 / static_cast<double>(elites.size());
  for (std::size_t r = 0; r < next.rows.size(); ++r) {
    std::vector<double>& row = next.rows[r];
    std::vector<double> freq(row.size(), 0.0);
    for (const CandidateWeights& e : elites) {
      if (e.size() != next.rows.size())
        throw ConfigError("update_distribution: candidate shape mismatch");
      freq[e[r]] += inv;
    }
    for (std::size_t i = 0; i < row.size(); ++i)
      row[i] = alpha * freq[i] + (1.0 - alpha) * row[i];
    if (floor > 0.0) floor_and_normalize(row, floor);
  }
  return next;
}

void GDiceConfig::validate() const {
  if (iterations < 1) throw ConfigError("GDiceConfig: iterations must be >= 1");
  if (samples_per_iteration < 1) throw ConfigError("GDiceConfig: samples_per_iteration must be >= 1");
  if (elite_count < 1 || elite_count > samples_per_iteration)
    throw ConfigError("GDiceConfig: need 1 <= elite_count <= samples_per_iteration");
  if (learning_rate <= 0.0 || learning_rate > 1.0)
    throw ConfigError("GDiceConfig: learning_rate must be in (0, 1]");
  if (episodes_per_evaluation < 1)
    throw ConfigError("GDiceConfig: episodes_per_evaluation must be >= 1");
  if (prob_floor < 0.0 || prob_floor >= 0.5) throw ConfigError("GDiceConfig: bad prob_floor");
}

namespace {

struct Stats {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Stats stats_of(const std::vector<double>& values) {
  Stats s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      double d = v - s.mean;
      ss += d * d;
    }
    s.stderr_ = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                          static_cast<double>(values.size()));
  }
  return s;
}

OptimizeResult run_optimize(const GDiceConfig& cfg, std::span<const std::size_t> widths,
                            const Blackbox& blackbox, bool parallel) {
  cfg.validate();
  SamplingDistribution dist = SamplingDistribution::uniform(widths);

  bool have_best = false;
  CandidateWeights best;
  double best_value = 0.0;
  LearningCurve curve;
  curve.reserve(static_cast<std::size_t>(cfg.iterations));

  const std::size_t ns = static_cast<std::size_t>(cfg.samples_per_iteration);
  std::vector<CandidateWeights> candidates(ns);
  std::vector<double> values(ns);

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    rng::Stream sampler(rng::derive(cfg.seed, "sample", static_cast<std::uint64_t>(iter)));
    for (std::size_t i = 0; i < ns; ++i) candidates[i] = sample_candidate(dist, sampler);

    // Common random numbers: one evaluation seed per iteration.
    const std::uint64_t eval_seed =
        rng::derive(cfg.seed, "evaluate", static_cast<std::uint64_t>(iter));

    if (parallel) {
#ifdef _OPENMP
      std::string error;
      int nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads)
      for (std::size_t i = 0; i < ns; ++i) {
        try {
          values[i] = blackbox(candidates[i], eval_seed);
        } catch (const std::exception& e) {
#pragma omp critical
          if (error.empty()) error = e.what();
        }
      }
      if (!error.empty()) throw Error(error);
#else
      for (std::size_t i = 0; i < ns; ++i) values[i] = blackbox(candidates[i], eval_seed);
#endif
    } else {
      for (std::size_t i = 0; i < ns; ++i) values[i] = blackbox(candidates[i], eval_seed);
    }

    // Rank by value, ties broken on the candidate encoding.
    std::vector<std::size_t> order(ns);
    for (std::size_t i = 0; i < ns; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (values[a] != values[b]) return values[a] > values[b];
      return candidates[a] < candidates[b];
    });

    const std::size_t top = order[0];
    if (!have_best || values[top] > best_value ||
        (values[top] == best_value && candidates[top] < best)) {
      have_best = true;
      best = candidates[top];
      best_value = values[top];
    }

    std::vector<CandidateWeights> pool;
    pool.reserve(static_cast<std::size_t>(cfg.elite_count));
    for (int e = 0; e < cfg.elite_count; ++e)
      pool.push_back(candidates[order[static_cast<std::size_t>(e)]]);
    if (cfg.retain_best &&
        std::find(pool.begin(), pool.end(), best) == pool.end())
      pool.back() = best;

    dist = update_distribution(dist, pool, cfg.learning_rate, cfg.prob_floor);

    Stats s = stats_of(values);
    curve.push_back({iter, best_value, s.mean, s.stderr_});
  }

  return {std::move(best), best_value, std::move(dist), std::move(curve)};
}

}  // namespace

OptimizeResult optimize(const GDiceConfig& cfg, std::span<const std::size_t> widths,
                        const Blackbox& blackbox) {
  return run_optimize(cfg, widths, blackbox, true);
}

OptimizeResult optimize_serial(const GDiceConfig& cfg, std::span<const std::size_t> widths,
                               const Blackbox& blackbox) {
  return run_optimize(cfg, widths, blackbox, false);
}

}  // namespace stratfuse::gdice
