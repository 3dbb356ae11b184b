#include <doctest.h>

#include <cmath>

#include "stratfuse/bounds.hpp"
#include "stratfuse/errors.hpp"
#include "stratfuse/gdice.hpp"

using namespace stratfuse;
using namespace stratfuse::gdice;

namespace {

GDiceConfig toy_config(std::uint64_t seed) {
  GDiceConfig cfg;
  cfg.iterations = 20;
  cfg.samples_per_iteration = 8;
  cfg.elite_count = 2;
  cfg.learning_rate = 0.3;
  cfg.episodes_per_evaluation = 1;
  cfg.prob_floor = 1e-3;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("sample_candidate is seeded and respects degenerate rows") {
  RowWidths widths = {4, 2, 3};
  SamplingDistribution dist = SamplingDistribution::uniform(widths);
  dist.rows[0] = {0.0, 0.0, 1.0, 0.0};
  rng::Stream s1(11), s2(11);
  CandidateWeights a = sample_candidate(dist, s1);
  CandidateWeights b = sample_candidate(dist, s2);
  CHECK(a == b);
  CHECK(a[0] == 2);

  // Uniform two-way rows come out balanced.
  SamplingDistribution fair = SamplingDistribution::uniform(RowWidths{2});
  rng::Stream s(12);
  int zeros = 0;
  for (int i = 0; i < 100000; ++i)
    if (sample_candidate(fair, s)[0] == 0) ++zeros;
  CHECK(std::abs(zeros / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("update_distribution blends elite frequencies") {
  SamplingDistribution dist = SamplingDistribution::uniform(RowWidths{2});
  std::vector<CandidateWeights> elites = {{0}, {0}, {0}};
  SamplingDistribution next = update_distribution(dist, elites, 0.2, 1e-3);
  CHECK(next.rows[0][0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(next.rows[0][1] == doctest::Approx(0.4).epsilon(1e-12));

  // Pure MLE with a single elite and no floor is one-hot.
  next = update_distribution(dist, std::vector<CandidateWeights>{{1}}, 1.0, 0.0);
  CHECK(next.rows[0][0] == 0.0);
  CHECK(next.rows[0][1] == 1.0);

  // alpha = 0 leaves the distribution untouched.
  next = update_distribution(dist, elites, 0.0, 1e-3);
  CHECK(next.rows == dist.rows);

  CHECK_THROWS_AS(update_distribution(dist, std::span<const CandidateWeights>{}, 0.2, 1e-3),
                  ConfigError);
}

TEST_CASE("update_distribution keeps the floor and normalization") {
  SamplingDistribution dist = SamplingDistribution::uniform(RowWidths{4});
  std::vector<CandidateWeights> elites = {{2}};
  for (int i = 0; i < 50; ++i) dist = update_distribution(dist, elites, 0.5, 1e-3);
  double sum = 0.0;
  for (double p : dist.rows[0]) {
    CHECK(p >= 1e-3);
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dist.rows[0][2] > 0.99);
}

TEST_CASE("optimize finds the unique optimum of a 4-arm blackbox") {
  RowWidths widths = {4};
  Blackbox blackbox = [](const CandidateWeights& w, std::uint64_t) {
    return w[0] == 3 ? 1.0 : 0.0;
  };
  int hits = 0;
  for (int run = 0; run < 100; ++run) {
    OptimizeResult r = optimize_serial(toy_config(run), widths, blackbox);
    if (r.best == CandidateWeights{3}) ++hits;
    double prev = -1e300;
    for (const CurvePoint& p : r.curve) {
      CHECK(p.best_so_far >= prev);
      prev = p.best_so_far;
    }
  }
  CHECK(hits >= 95);
}

TEST_CASE("the sampler concentrates on the enumerated optimum") {
  // Assumption-style convergence: the uniform-over-optima distribution gets
  // closer to the final sampler than to the initial one, measured by
  // KL(optima || sampler), which stays finite under the probability floor.
  RowWidths widths = {4};
  Blackbox blackbox = [](const CandidateWeights& w, std::uint64_t) {
    return w[0] == 3 ? 1.0 : 0.0;
  };
  OptimizeResult r = optimize_serial(toy_config(7), widths, blackbox);
  std::vector<std::vector<double>> optima = {{0.0, 0.0, 0.0, 1.0}};
  std::vector<std::vector<double>> initial = {{0.25, 0.25, 0.25, 0.25}};
  double kl_before = bounds::kl_categorical(optima, initial);
  double kl_after = bounds::kl_categorical(optima, r.distribution.rows);
  CHECK(kl_after < kl_before);
}

TEST_CASE("zero iterations is a configuration error") {
  GDiceConfig cfg = toy_config(1);
  cfg.iterations = 0;
  RowWidths widths = {4};
  Blackbox blackbox = [](const CandidateWeights&, std::uint64_t) { return 0.0; };
  CHECK_THROWS_AS(optimize_serial(cfg, widths, blackbox), ConfigError);
  cfg.iterations = 10;
  cfg.elite_count = 99;
  CHECK_THROWS_AS(optimize_serial(cfg, widths, blackbox), ConfigError);
}

TEST_CASE("a constant blackbox keeps the distribution in the interior") {
  RowWidths widths = {3, 3};
  Blackbox blackbox = [](const CandidateWeights&, std::uint64_t) { return 2.5; };
  OptimizeResult r = optimize_serial(toy_config(3), widths, blackbox);
  for (const auto& row : r.distribution.rows)
    for (double p : row) {
      CHECK(p >= 1e-3);
      CHECK(p < 1.0);
    }
  for (const CurvePoint& p : r.curve) CHECK(p.best_so_far == 2.5);
}

TEST_CASE("common random numbers: evaluation seed is shared within an iteration") {
  RowWidths widths = {2};
  std::vector<std::uint64_t> seeds;
  Blackbox blackbox = [&](const CandidateWeights&, std::uint64_t seed) {
    seeds.push_back(seed);
    return 0.0;
  };
  GDiceConfig cfg = toy_config(5);
  cfg.iterations = 2;
  cfg.samples_per_iteration = 4;
  optimize_serial(cfg, widths, blackbox);
  REQUIRE(seeds.size() == 8);
  for (int i = 1; i < 4; ++i) CHECK(seeds[static_cast<std::size_t>(i)] == seeds[0]);
  CHECK(seeds[4] != seeds[0]);
  for (int i = 5; i < 8; ++i) CHECK(seeds[static_cast<std::size_t>(i)] == seeds[4]);
}
