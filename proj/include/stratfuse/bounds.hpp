#pragma once

#include <span>
#include <vector>

#include "stratfuse/sim_config.hpp"

namespace stratfuse::bounds {

// All logarithms are natural.

// KL divergence between two product distributions given as matching sets of
// categorical rows: sum over rows of sum_x q ln(q/p).  Returns +infinity when
// p assigns zero mass where q does not (the distinct infinite-divergence
// signal); q(x)=0 terms contribute zero.
double kl_categorical(std::span<const std::vector<double>> q,
                      std::span<const std::vector<double>> p);

// sqrt((kl + ln(4m/delta)) / (2m - 1)): high-probability gap between expected
// and empirical performance of a stochastic candidate selector.
double pac_bayes_gap(double kl, int m, double delta);

// sqrt((eps + ln(8m/delta)) / (2m - 1)): same gap with the selector's KL
// replaced by an assumed optimizer-quality bound eps, union-bounded.
double pac_bayes_gap_assumed(double eps, int m, double delta);

// sqrt(ln(1/delta) / (2m)): empirical-best versus true-best gap.
double hoeffding_gap(int m, double delta);

// 2 * sqrt((eps + ln(16m/delta)) / (2m - 1)): end-to-end near-optimality gap
// of the switching-weight search.
double near_optimality_gap(double eps, int m, double delta);

// Exact inter-controller transition count for n agents with r stratagems of
// k nodes each: n * r * (r-1) * k^2.
long long h_dimension(int n, int r, int k);

struct RescaledReturns {
  std::vector<double> values;  // (raw - r_min) / (r_max - r_min), all in [0,1]
  double r_min = 0.0;
  double r_max = 1.0;
};

// Affine map of raw returns onto [0,1]; raw values outside [r_min, r_max]
// raise an error listing the offenders.
RescaledReturns rescale_returns(std::span<const double> raw, double r_min, double r_max);

struct ReturnBounds {
  double r_min = 0.0;
  double r_max = 0.0;
};

// Sound extremal accounting of one episode's team return under cfg:
//   worst case = capture loss + every step penalty + the most tags the
//                opposition can land (one per re-invasion interval);
//   best case  = capture win + the most tags we can land (step penalties
//                are never positive, so they only appear on the low side).
// The re-invasion interval of a robot is the distance from its spawn to the
// nearest cell of the opposing territory (a tagged robot respawns and must
// walk back before it can be tagged again).
ReturnBounds ctf_return_bounds(const ctf::SimConfig& cfg);

}  // namespace stratfuse::bounds
