#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stratfuse/grid.hpp"

namespace stratfuse::ctf {

enum class FlagRule : std::uint8_t {
  Fixed,   // flag sits at vantage point `flag_index[team]`
  Random,  // one own vantage point drawn per episode from the world stream
};

// A patrol loop over three own vantage points: p1 -> p2 -> p3 -> p1.
struct SentryDef {
  std::array<int, 3> points{};
};

// A coordinated attack: robot with role index i stages at own-or-enemy
// point p[i], then converges on the enemy-side target p[3].
struct PincerDef {
  // Staging points are enemy vantage indices; the target is too.
  std::array<int, 4> points{};
};

struct SimConfig {
  int grid_width = 12;
  int grid_height = 12;  // territories split at grid_height / 2
  int vantage_points_per_side = 10;
  int blue_team_size = 3;
  int red_team_size = 3;
  int horizon = 200;    // primitive steps
  double gamma = 1.0;   // discount per primitive step

  int tag_range = 2;
  int close_range = 2;
  int far_range = 5;
  int flag_sight_range = 3;

  double step_penalty = -1.0;  // charged to each robot at each step
  double tag_reward = 10.0;    // +/- per tag event, zero-sum
  double capture_reward = 500.0;

  // Probability that a movement primitive slips to Stay (actuation noise in
  // the low-level navigation).  Zero gives fully deterministic execution.
  double move_slip = 0.05;

  FlagRule flag_rule = FlagRule::Fixed;
  std::array<int, 2> flag_index = {3, 3};  // own vantage index per team

  // Own-territory vantage points, one list per team, both in absolute grid
  // coordinates.  Index k of each list is "vantage k" of that team.
  std::array<std::vector<Cell>, 2> vantage;

  // Spawn cells per team (first team_size entries are used).
  std::array<std::vector<Cell>, 2> spawns;

  std::vector<SentryDef> sentries;  // exactly 5 instances per team
  std::vector<PincerDef> pincers;   // exactly 3 instances per team

  // Waypoint macros give up after this many primitive steps so a blocked
  // path cannot pin a robot for the rest of the episode.
  int macro_timeout() const { return 6 * (grid_width + grid_height); }

  int boundary_row() const { return grid_height / 2; }  // first red row

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < grid_width && c.y >= 0 && c.y < grid_height;
  }

  Team territory_of(Cell c) const {
    return c.y < boundary_row() ? Team::Blue : Team::Red;
  }

  int team_size(Team t) const {
    return t == Team::Blue ? blue_team_size : red_team_size;
  }

  int total_robots() const { return blue_team_size + red_team_size; }

  // Throws ConfigError on any violated invariant.
  void validate() const;
};

// The default 12x12 layout: two rows of five vantage points per territory,
// spawns on the back row, flags at vantage 3.
SimConfig default_config();

}  // namespace stratfuse::ctf
