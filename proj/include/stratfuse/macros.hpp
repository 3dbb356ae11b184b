#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stratfuse/grid.hpp"
#include "stratfuse/sim_config.hpp"

namespace stratfuse::ctf {

enum class MacroKind : std::uint8_t { Move, Sentry, Pincer, Tag };

// A vantage point reference relative to the acting robot's team.
struct VantageRef {
  bool enemy = false;
  int index = 0;
};

// One macro-action: an initiation rule, a termination rule and a scripted
// low-level waypoint policy, identified by its index in the MacroSet.
struct MacroDef {
  MacroKind kind = MacroKind::Move;
  std::array<VantageRef, 4> points{};  // Move uses 1, Sentry 3, Pincer 4
  int instance = 0;                    // index within its kind
  std::string name;
};

// The shared per-robot action set.  Both teams use the same catalogue; enemy
// references resolve against the acting robot's opponent.
//
// Layout: Move(own 0..V-1), Move(enemy 0..V-1), Sentry 0..4, Pincer 0..2, Tag.
class MacroSet {
 public:
  explicit MacroSet(const SimConfig& cfg);

  int size() const { return static_cast<int>(defs_.size()); }
  const MacroDef& def(int id) const { return defs_[static_cast<std::size_t>(id)]; }
  const std::string& name(int id) const { return def(id).name; }

  int move_own(int vantage) const { return vantage; }
  int move_enemy(int vantage) const { return vantage_count_ + vantage; }
  int sentry(int instance) const { return 2 * vantage_count_ + instance; }
  int pincer(int instance) const { return 2 * vantage_count_ + 5 + instance; }
  int tag() const { return 2 * vantage_count_ + 5 + 3; }

  // Resolves a reference to an absolute grid cell for a robot on `team`.
  Cell resolve(const SimConfig& cfg, Team team, VantageRef ref) const;

 private:
  std::vector<MacroDef> defs_;
  int vantage_count_ = 0;
};

}  // namespace stratfuse::ctf
