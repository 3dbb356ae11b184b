#include "stratfuse/unified.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "stratfuse/errors.hpp"

namespace stratfuse::fsc {

void UnifiedController::validate() const {
  if (subs.empty()) throw ConfigError("UnifiedController: no sub-controllers");
  for (const Controller& c : subs) {
    c.validate();
    if (c.nodes != k() || c.actions != subs.front().actions)
      throw ConfigError("UnifiedController: sub-controller shapes differ");
  }
  if (gate.size() != static_cast<std::size_t>(global_nodes()))
    throw ConfigError("UnifiedController: gate size mismatch");
  for (double g : gate)
    if (g < 0.0 || g > 1.0 || !std::isfinite(g))
      throw ConfigError("UnifiedController: gate outside [0,1]");
  const std::size_t expected =
      static_cast<std::size_t>(global_nodes()) * static_cast<std::size_t>(foreign_nodes());
  if (edges.size() != expected) throw ConfigError("UnifiedController: edge size mismatch");
  for (int g = 0; g < global_nodes(); ++g) {
    if (foreign_nodes() == 0) break;
    double sum = 0.0;
    for (double p : edge_row(g)) {
      if (p < 0.0 || !std::isfinite(p)) throw ConfigError("UnifiedController: bad edge weight");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ConfigError("UnifiedController: edge row does not sum to 1");
  }
}

UnifiedController build_unified(std::span<const Controller> stratagems, double init_gate) {
  if (stratagems.empty()) throw ConfigError("build_unified: need at least one stratagem");
  if (init_gate < 0.0 || init_gate > 1.0) throw ConfigError("build_unified: init_gate outside [0,1]");
  const Controller& first = stratagems.front();
  for (const Controller& c : stratagems)
    if (c.nodes != first.nodes || c.actions != first.actions)
      throw ConfigError("build_unified: stratagems must share node and action counts");

  UnifiedController u;
  u.subs.assign(stratagems.begin(), stratagems.end());
  u.gate.assign(static_cast<std::size_t>(u.global_nodes()),
                u.r() == 1 ? 0.0 : init_gate);
  if (u.foreign_nodes() > 0)
    u.edges.assign(static_cast<std::size_t>(u.global_nodes()) *
                       static_cast<std::size_t>(u.foreign_nodes()),
                   1.0 / u.foreign_nodes());
  return u;
}

UnifiedPosition unified_step(const UnifiedController& u, UnifiedPosition pos,
                             int obs_index, rng::Stream& stream) {
  int node = next_node(u.subs[static_cast<std::size_t>(pos.sub)], pos.node, obs_index, stream);
  UnifiedPosition next{pos.sub, node};
  if (u.foreign_nodes() == 0) return next;
  double g = u.gate[static_cast<std::size_t>(u.global_index(next.sub, next.node))];
  if (g <= 0.0) return next;  // no draw: zero-gate trace matches the sub-controller
  if (stream.next_double() < g) {
    int slot = static_cast<int>(
        stream.categorical(u.edge_row(u.global_index(next.sub, next.node))));
    return u.foreign_target(next.sub, slot);
  }
  return next;
}

long long switch_weight_count(int n, int r, int k) {
  if (n < 1 || r < 1 || k < 1)
    throw ConfigError("switch_weight_count: dimensions must be >= 1");
  long long rk = static_cast<long long>(r) * k;
  return n * (rk + rk * (static_cast<long long>(r) - 1) * k);
}

namespace {

void write_row(std::ofstream& out, std::span<const double> values) {
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    out << buf << (i + 1 == values.size() ? '\n' : ' ');
  }
}

}  // namespace

void save_unified_team(const std::string& path, std::span<const UnifiedController> team) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "unified-team 1\n";
  out << "agents " << team.size() << "\n";
  for (const UnifiedController& u : team) {
    out << "unified\n";
    out << "subs " << u.r() << "\n";
    out << "nodes " << u.k() << "\n";
    out << "gates\n";
    write_row(out, u.gate);
    out << "edges\n";
    for (int g = 0; g < u.global_nodes() && u.foreign_nodes() > 0; ++g)
      write_row(out, u.edge_row(g));
    for (const Controller& c : u.subs) save_controller(out, c);
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<UnifiedController> load_unified_team(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  auto expect = [&](const std::string& literal) {
    std::string tok;
    if (!(in >> tok) || tok != literal)
      throw IoError("unified-team file: expected '" + literal + "'");
  };
  auto read_int = [&]() {
    int v;
    if (!(in >> v)) throw IoError("unified-team file: expected integer");
    return v;
  };
  auto read_double = [&]() {
    double v;
    if (!(in >> v)) throw IoError("unified-team file: expected number");
    return v;
  };

  expect("unified-team");
  if (read_int() != 1) throw IoError("unsupported unified-team version");
  expect("agents");
  int agents = read_int();
  if (agents < 1) throw IoError("unified-team: bad agent count");

  std::vector<UnifiedController> team;
  for (int a = 0; a < agents; ++a) {
    expect("unified");
    expect("subs");
    int subs = read_int();
    expect("nodes");
    int nodes = read_int();
    if (subs < 1 || nodes < 1) throw IoError("unified-team: bad dimensions");
    UnifiedController u;
    u.gate.resize(static_cast<std::size_t>(subs) * static_cast<std::size_t>(nodes));
    u.edges.resize(u.gate.size() * static_cast<std::size_t>(subs - 1) *
                   static_cast<std::size_t>(nodes));
    expect("gates");
    for (double& v : u.gate) v = read_double();
    expect("edges");
    for (double& v : u.edges) v = read_double();
    for (int s = 0; s < subs; ++s) u.subs.push_back(load_controller(in));
    u.validate();
    team.push_back(std::move(u));
  }
  return team;
}

}  // namespace stratfuse::fsc
