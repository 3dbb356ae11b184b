#pragma once

#include <string>
#include <vector>

#include "stratfuse/controller.hpp"

namespace stratfuse::fsc {

struct UnifiedPosition {
  int sub = 0;   // which frozen sub-controller
  int node = 0;  // node within it

  friend bool operator==(const UnifiedPosition&, const UnifiedPosition&) = default;
};

// An agent's switching controller: r frozen sub-controllers connected by
// learned inter-controller transitions.  Each global node (sub, node) has a
// switch gate in [0,1] and a categorical over the (r-1)*k nodes of the other
// sub-controllers.
struct UnifiedController {
  std::vector<Controller> subs;
  std::vector<double> gate;   // r*k
  std::vector<double> edges;  // (r*k) x ((r-1)*k), row-major; empty when r == 1

  int r() const { return static_cast<int>(subs.size()); }
  int k() const { return subs.empty() ? 0 : subs.front().nodes; }
  int global_nodes() const { return r() * k(); }
  int foreign_nodes() const { return (r() - 1) * k(); }
  int global_index(int sub, int node) const { return sub * k() + node; }

  // Maps a foreign edge slot of global node (sub, .) to a concrete position.
  // Foreign slots enumerate the other sub-controllers in ascending order.
  UnifiedPosition foreign_target(int sub, int slot) const {
    int fc = slot / k();
    int node = slot % k();
    return {fc < sub ? fc : fc + 1, node};
  }

  std::span<const double> edge_row(int global) const {
    return {edges.data() + static_cast<std::size_t>(global) * static_cast<std::size_t>(foreign_nodes()),
            static_cast<std::size_t>(foreign_nodes())};
  }
  std::span<double> edge_row(int global) {
    return {edges.data() + static_cast<std::size_t>(global) * static_cast<std::size_t>(foreign_nodes()),
            static_cast<std::size_t>(foreign_nodes())};
  }

  void validate() const;
};

// Connects trained stratagem controllers of one agent into a switching
// controller.  Intra weights are copied verbatim; every gate starts at
// `init_gate` and every edge row starts uniform.
UnifiedController build_unified(std::span<const Controller> stratagems,
                                double init_gate = 0.1);

// Two-stage transition: intra move through the frozen sub-controller's delta,
// then with probability gate(new node) a jump along the node's foreign edges.
// A zero gate consumes no randomness, so an all-zero-gate controller replays
// its sub-controller's trace exactly.
UnifiedPosition unified_step(const UnifiedController& u, UnifiedPosition pos,
                             int obs_index, rng::Stream& stream);

// Number of free switching parameters for n agents, r stratagems of k nodes:
// n * (r*k gates + r*k*(r-1)*k edge weights).
long long switch_weight_count(int n, int r, int k);

void save_unified_team(const std::string& path, std::span<const UnifiedController> team);
std::vector<UnifiedController> load_unified_team(const std::string& path);

}  // namespace stratfuse::fsc
