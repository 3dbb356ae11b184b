#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stratfuse/observation.hpp"
#include "stratfuse/rng.hpp"

namespace stratfuse::fsc {

// A single agent's finite-state policy controller.  Each node carries an
// output categorical over macro-actions and, per macro-observation, a
// transition categorical over successor nodes.
struct Controller {
  int nodes = 1;
  int actions = 1;
  std::vector<double> lambda;  // nodes x actions, row-major
  std::vector<double> delta;   // (nodes * kObservationCount) x nodes, row-major

  std::span<const double> lambda_row(int node) const {
    return {lambda.data() + static_cast<std::size_t>(node) * static_cast<std::size_t>(actions),
            static_cast<std::size_t>(actions)};
  }
  std::span<double> lambda_row(int node) {
    return {lambda.data() + static_cast<std::size_t>(node) * static_cast<std::size_t>(actions),
            static_cast<std::size_t>(actions)};
  }
  std::span<const double> delta_row(int node, int obs) const {
    std::size_t row = static_cast<std::size_t>(node) * ctf::kObservationCount +
                      static_cast<std::size_t>(obs);
    return {delta.data() + row * static_cast<std::size_t>(nodes),
            static_cast<std::size_t>(nodes)};
  }
  std::span<double> delta_row(int node, int obs) {
    std::size_t row = static_cast<std::size_t>(node) * ctf::kObservationCount +
                      static_cast<std::size_t>(obs);
    return {delta.data() + row * static_cast<std::size_t>(nodes),
            static_cast<std::size_t>(nodes)};
  }

  // Checks dimensions and that every categorical sums to 1 within 1e-9.
  void validate() const;

  friend bool operator==(const Controller&, const Controller&) = default;
};

// All categoricals uniform.
Controller uniform_controller(int nodes, int actions);

// Draw a macro-action id from lambda(.|node).
int sample_action(const Controller& c, int node, rng::Stream& stream);

// Draw the successor node from delta(.|node, obs).
int next_node(const Controller& c, int node, int obs_index, rng::Stream& stream);

// Text serialization: dimension header plus row-major probabilities printed
// with 17 significant digits, so save/load round-trips are bit-exact.
void save_controller(std::ostream& out, const Controller& c);
Controller load_controller(std::istream& in);

// Team files hold one controller per agent slot.
void save_team(const std::string& path, std::span<const Controller> team);
std::vector<Controller> load_team(const std::string& path);

}  // namespace stratfuse::fsc
