#pragma once

#include <cstdint>
#include <vector>

namespace stratfuse::bounds {

// An enumerable toy selection problem: finitely many candidates, a finite
// adversary support with known probabilities, and a bounded reward table, so
// the true expected performance of every candidate is exactly computable.
struct CoverageToySpec {
  std::vector<std::vector<double>> reward;  // [candidate][support], all in [0,1]
  std::vector<double> u_prob;               // distribution over the support

  void validate() const;
  double true_value(std::size_t candidate) const;  // sum_u pi(u) * reward
  double best_true_value() const;
};

// The toy shipped with the CLI: 2 candidates over a 4-point support.
CoverageToySpec shipped_coverage_toy();

struct CoverageReport {
  int trials = 0;
  int violations = 0;
  double violation_fraction = 0.0;
  double delta = 0.0;
  double gap = 0.0;       // hoeffding_gap(m, delta)
  double margin = 0.0;    // 2 * sqrt(delta * (1 - delta) / trials)
  bool pass = false;      // violation_fraction <= delta + margin
};

// Empirical check of the empirical-best-vs-true-best inequality: each trial
// draws m adversaries from the support, computes the maximal empirical value
// over candidates, and tests max_w L_hat(w) <= L(w*) + hoeffding_gap(m, delta).
// The violation fraction must stay below delta plus a sampling margin.
// Trials use pre-assigned seeds and run in parallel when threads != 1.
CoverageReport empirical_coverage_check(const CoverageToySpec& toy, int trials, int m,
                                        double delta, std::uint64_t seed, int threads = 1);

}  // namespace stratfuse::bounds
