#include "stratfuse/encoding.hpp"

#include "stratfuse/errors.hpp"
#include "stratfuse/observation.hpp"

namespace stratfuse::fsc {

gdice::RowWidths controller_widths(int agents, int nodes, int actions) {
  if (agents < 1 || nodes < 1 || actions < 1)
    throw ConfigError("controller_widths: dimensions must be >= 1");
  gdice::RowWidths widths;
  const std::size_t per_agent =
      static_cast<std::size_t>(nodes) * (1 + ctf::kObservationCount);
  widths.reserve(static_cast<std::size_t>(agents) * per_agent);
  for (int a = 0; a < agents; ++a) {
    for (int q = 0; q < nodes; ++q) widths.push_back(static_cast<std::size_t>(actions));
    for (int q = 0; q < nodes; ++q)
      for (int o = 0; o < ctf::kObservationCount; ++o)
        widths.push_back(static_cast<std::size_t>(nodes));
  }
  return widths;
}

std::vector<Controller> decode_controllers(int agents, int nodes, int actions,
                                           const gdice::CandidateWeights& w) {
  gdice::RowWidths widths = controller_widths(agents, nodes, actions);
  if (w.size() != widths.size())
    throw ConfigError("decode_controllers: candidate size mismatch");

  std::vector<Controller> team;
  team.reserve(static_cast<std::size_t>(agents));
  std::size_t row = 0;
  for (int a = 0; a < agents; ++a) {
    Controller c;
    c.nodes = nodes;
    c.actions = actions;
    c.lambda.assign(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(actions), 0.0);
    c.delta.assign(static_cast<std::size_t>(nodes) * ctf::kObservationCount *
                       static_cast<std::size_t>(nodes),
                   0.0);
    for (int q = 0; q < nodes; ++q) {
      c.lambda_row(q)[w[row]] = 1.0;
      ++row;
    }
    for (int q = 0; q < nodes; ++q) {
      for (int o = 0; o < ctf::kObservationCount; ++o) {
        c.delta_row(q, o)[w[row]] = 1.0;
        ++row;
      }
    }
    team.push_back(std::move(c));
  }
  return team;
}

gdice::RowWidths switching_widths(int agents, int r, int k) {
  if (agents < 1 || r < 1 || k < 1)
    throw ConfigError("switching_widths: dimensions must be >= 1");
  gdice::RowWidths widths;
  const int rk = r * k;
  const int foreign = (r - 1) * k;
  for (int a = 0; a < agents; ++a) {
    for (int g = 0; g < rk; ++g) widths.push_back(2);
    if (foreign > 0)
      for (int g = 0; g < rk; ++g) widths.push_back(static_cast<std::size_t>(foreign));
  }
  return widths;
}

std::vector<UnifiedController> decode_unified(
    const std::vector<std::vector<Controller>>& stratagems,
    const gdice::CandidateWeights& w) {
  if (stratagems.empty() || stratagems.front().empty())
    throw ConfigError("decode_unified: no stratagems");
  const int r = static_cast<int>(stratagems.size());
  const int agents = static_cast<int>(stratagems.front().size());
  const int k = stratagems.front().front().nodes;
  for (const auto& s : stratagems)
    if (static_cast<int>(s.size()) != agents)
      throw ConfigError("decode_unified: ragged stratagem set");

  gdice::RowWidths widths = switching_widths(agents, r, k);
  if (w.size() != widths.size())
    throw ConfigError("decode_unified: candidate size mismatch");

  std::vector<UnifiedController> team;
  team.reserve(static_cast<std::size_t>(agents));
  std::size_t row = 0;
  for (int a = 0; a < agents; ++a) {
    std::vector<Controller> subs;
    subs.reserve(static_cast<std::size_t>(r));
    for (int s = 0; s < r; ++s) subs.push_back(stratagems[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]);
    UnifiedController u = build_unified(subs, 0.0);
    for (int g = 0; g < u.global_nodes(); ++g) {
      u.gate[static_cast<std::size_t>(g)] = w[row] == 1 ? 1.0 : 0.0;
      ++row;
    }
    if (u.foreign_nodes() > 0) {
      for (int g = 0; g < u.global_nodes(); ++g) {
        auto edge = u.edge_row(g);
        for (double& p : edge) p = 0.0;
        edge[w[row]] = 1.0;
        ++row;
      }
    }
    team.push_back(std::move(u));
  }
  return team;
}

}  // namespace stratfuse::fsc
