#include "stratfuse/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stratfuse/errors.hpp"

namespace stratfuse::bounds {

namespace {

void check_mq(int m, double delta) {
  if (m < 1) throw ConfigError("bound gap: m must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("bound gap: delta must be in (0,1)");
}

}  // namespace

double kl_categorical(std::span<const std::vector<double>> q,
                      std::span<const std::vector<double>> p) {
  if (q.size() != p.size()) throw ConfigError("kl_categorical: row count mismatch");
  double total = 0.0;
  for (std::size_t r = 0; r < q.size(); ++r) {
    if (q[r].size() != p[r].size()) throw ConfigError("kl_categorical: row width mismatch");
    for (std::size_t i = 0; i < q[r].size(); ++i) {
      double qi = q[r][i];
      double pi = p[r][i];
      if (qi < 0.0 || pi < 0.0) throw ConfigError("kl_categorical: negative probability");
      if (qi == 0.0) continue;
      if (pi == 0.0) return std::numeric_limits<double>::infinity();
      total += qi * std::log(qi / pi);
    }
  }
  return total;
}

double pac_bayes_gap(double kl, int m, double delta) {
  check_mq(m, delta);
  if (kl < 0.0) throw ConfigError("pac_bayes_gap: kl must be >= 0");
  return std::sqrt((kl + std::log(4.0 * m / delta)) / (2.0 * m - 1.0));
}

double pac_bayes_gap_assumed(double eps, int m, double delta) {
  check_mq(m, delta);
  if (eps < 0.0) throw ConfigError("pac_bayes_gap_assumed: eps must be >= 0");
  return std::sqrt((eps + std::log(8.0 * m / delta)) / (2.0 * m - 1.0));
}

double hoeffding_gap(int m, double delta) {
  check_mq(m, delta);
  return std::sqrt(std::log(1.0 / delta) / (2.0 * m));
}

double near_optimality_gap(double eps, int m, double delta) {
  check_mq(m, delta);
  if (eps < 0.0) throw ConfigError("near_optimality_gap: eps must be >= 0");
  return 2.0 * std::sqrt((eps + std::log(16.0 * m / delta)) / (2.0 * m - 1.0));
}

long long h_dimension(int n, int r, int k) {
  if (n < 1 || r < 1 || k < 1) throw ConfigError("h_dimension: dimensions must be >= 1");
  return static_cast<long long>(n) * r * (r - 1) * k * k;
}

RescaledReturns rescale_returns(std::span<const double> raw, double r_min, double r_max) {
  if (!(r_max > r_min)) throw ConfigError("rescale_returns: need r_max > r_min");
  std::string offenders;
  for (double v : raw) {
    if (v < r_min || v > r_max) {
      if (!offenders.empty()) offenders += ", ";
      offenders += std::to_string(v);
    }
  }
  if (!offenders.empty())
    throw ConfigError("rescale_returns: values outside [r_min, r_max]: " + offenders);

  RescaledReturns out;
  out.r_min = r_min;
  out.r_max = r_max;
  out.values.reserve(raw.size());
  const double span = r_max - r_min;
  for (double v : raw) out.values.push_back((v - r_min) / span);
  return out;
}

ReturnBounds ctf_return_bounds(const ctf::SimConfig& cfg) {
  cfg.validate();
  const double steps = static_cast<double>(cfg.horizon);

  // Distance from a robot's spawn to the nearest opposing-territory cell;
  // this bounds how often the same robot can be tagged.
  auto max_tags_against = [&](ctf::Team victims) {
    double total = 0.0;
    const int boundary = cfg.boundary_row();
    for (int i = 0; i < cfg.team_size(victims); ++i) {
      ctf::Cell spawn = cfg.spawns[static_cast<std::size_t>(team_index(victims))][static_cast<std::size_t>(i)];
      int dist = victims == ctf::Team::Blue ? boundary - spawn.y : spawn.y - (boundary - 1);
      if (dist < 1) dist = 1;
      total += cfg.horizon > 0 ? 1.0 + std::floor((steps - 1.0) / dist) : 0.0;
    }
    return total;
  };

  ReturnBounds b;
  b.r_max = cfg.capture_reward + cfg.tag_reward * max_tags_against(ctf::Team::Red);
  b.r_min = -cfg.capture_reward - cfg.tag_reward * max_tags_against(ctf::Team::Blue) +
            cfg.step_penalty * cfg.blue_team_size * steps;
  return b;
}

}  // namespace stratfuse::bounds
