#include "stratfuse/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "stratfuse/bounds.hpp"
#include "stratfuse/errors.hpp"
#include "stratfuse/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stratfuse::bounds {

void CoverageToySpec::validate() const {
  if (reward.empty()) throw ConfigError("CoverageToySpec: no candidates");
  if (u_prob.empty()) throw ConfigError("CoverageToySpec: empty support");
  double sum = 0.0;
  for (double p : u_prob) {
    if (p < 0.0) throw ConfigError("CoverageToySpec: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("CoverageToySpec: support probabilities must sum to 1");
  for (const auto& row : reward) {
    if (row.size() != u_prob.size())
      throw ConfigError("CoverageToySpec: reward row width mismatch");
    for (double v : row)
      if (v < 0.0 || v > 1.0)
        throw ConfigError("CoverageToySpec: rewards must lie in [0,1]");
  }
}

double CoverageToySpec::true_value(std::size_t candidate) const {
  double v = 0.0;
  for (std::size_t u = 0; u < u_prob.size(); ++u)
    v += u_prob[u] * reward[candidate][u];
  return v;
}

double CoverageToySpec::best_true_value() const {
  double best = true_value(0);
  for (std::size_t c = 1; c < reward.size(); ++c) best = std::max(best, true_value(c));
  return best;
}

CoverageToySpec shipped_coverage_toy() {
  CoverageToySpec toy;
  toy.reward = {{0.9, 0.1, 0.8, 0.2}, {0.4, 0.6, 0.5, 0.45}};
  toy.u_prob = {0.25, 0.25, 0.25, 0.25};
  return toy;
}

CoverageReport empirical_coverage_check(const CoverageToySpec& toy, int trials, int m,
                                        double delta, std::uint64_t seed, int threads) {
  toy.validate();
  if (trials < 1) throw ConfigError("empirical_coverage_check: trials must be >= 1");
  const double gap = hoeffding_gap(m, delta);
  const double best_true = toy.best_true_value();
  const std::size_t candidates = toy.reward.size();

  auto trial_violates = [&](int t) {
    rng::Stream stream(rng::derive(seed, "trial", static_cast<std::uint64_t>(t)));
    std::vector<double> sums(candidates, 0.0);
    for (int i = 0; i < m; ++i) {
      std::size_t u = stream.categorical(toy.u_prob);
      for (std::size_t c = 0; c < candidates; ++c) sums[c] += toy.reward[c][u];
    }
    double best_emp = sums[0];
    for (double s : sums) best_emp = std::max(best_emp, s);
    best_emp /= static_cast<double>(m);
    return best_emp > best_true + gap;
  };

  std::vector<std::uint8_t> violated(static_cast<std::size_t>(trials), 0);
  if (threads == 1) {
    for (int t = 0; t < trials; ++t)
      violated[static_cast<std::size_t>(t)] = trial_violates(t) ? 1 : 0;
  } else {
#ifdef _OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (int t = 0; t < trials; ++t)
      violated[static_cast<std::size_t>(t)] = trial_violates(t) ? 1 : 0;
#else
    for (int t = 0; t < trials; ++t)
      violated[static_cast<std::size_t>(t)] = trial_violates(t) ? 1 : 0;
#endif
  }

  CoverageReport report;
  report.trials = trials;
  for (std::uint8_t v : violated) report.violations += v;
  report.violation_fraction =
      static_cast<double>(report.violations) / static_cast<double>(trials);
  report.delta = delta;
  report.gap = gap;
  report.margin = 2.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
  report.pass = report.violation_fraction <= delta + report.margin;
  return report;
}

}  // namespace stratfuse::bounds
