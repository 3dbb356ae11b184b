#include "stratfuse/sim_config.hpp"

#include <set>
#include <string>

#include "stratfuse/errors.hpp"

namespace stratfuse::ctf {

namespace {

void fail(const std::string& msg) { throw ConfigError("invalid SimConfig: " + msg); }

}  // namespace

void SimConfig::validate() const {
  if (grid_width < 2 || grid_height < 2) fail("grid too small");
  if (grid_height % 2 != 0) fail("grid_height must be even to split territories");
  if (horizon < 0) fail("horizon must be >= 0");
  if (gamma <= 0.0 || gamma > 1.0) fail("gamma must be in (0, 1]");
  if (tag_range < 0 || close_range < 0 || far_range < 0 || flag_sight_range < 0)
    fail("ranges must be >= 0");
  if (move_slip < 0.0 || move_slip >= 1.0) fail("move_slip must be in [0, 1)");
  if (vantage_points_per_side < 1) fail("need at least one vantage point per side");
  if (blue_team_size < 2 || blue_team_size > 3 || red_team_size < 2 || red_team_size > 3)
    fail("team sizes must be 2 or 3");

  for (Team t : {Team::Blue, Team::Red}) {
    const int ti = team_index(t);
    const auto& pts = vantage[ti];
    if (static_cast<int>(pts.size()) != vantage_points_per_side)
      fail("territory must contain exactly vantage_points_per_side points");
    std::set<std::pair<int, int>> seen;
    for (Cell c : pts) {
      if (!in_bounds(c)) fail("vantage point out of bounds");
      if (territory_of(c) != t) fail("vantage point outside its own territory");
      if (!seen.insert({c.x, c.y}).second) fail("duplicate vantage point");
    }
    if (flag_rule == FlagRule::Fixed &&
        (flag_index[ti] < 0 || flag_index[ti] >= vantage_points_per_side))
      fail("flag_index out of range");

    const auto& sp = spawns[ti];
    if (static_cast<int>(sp.size()) < team_size(t)) fail("not enough spawn cells");
    for (int i = 0; i < team_size(t); ++i) {
      if (!in_bounds(sp[i])) fail("spawn cell out of bounds");
      if (territory_of(sp[i]) != t) fail("spawn cell outside own territory");
    }
  }

  // Spawns must not overlap across the whole roster.
  std::set<std::pair<int, int>> cells;
  for (Team t : {Team::Blue, Team::Red}) {
    for (int i = 0; i < team_size(t); ++i) {
      Cell c = spawns[team_index(t)][i];
      if (!cells.insert({c.x, c.y}).second) fail("overlapping spawn cells");
    }
  }

  if (sentries.size() != 5) fail("expected exactly 5 sentry instances per team");
  if (pincers.size() != 3) fail("expected exactly 3 pincer instances per team");
  for (const auto& s : sentries)
    for (int p : s.points)
      if (p < 0 || p >= vantage_points_per_side) fail("sentry vantage index out of range");
  for (const auto& p : pincers)
    for (int q : p.points)
      if (q < 0 || q >= vantage_points_per_side) fail("pincer vantage index out of range");
}

SimConfig default_config() {
  SimConfig cfg;
  // Back row then front row, left to right; "front" faces the boundary.
  cfg.vantage[team_index(Team::Blue)] = {
      {1, 1}, {3, 1}, {5, 1}, {7, 1}, {9, 1},
      {1, 4}, {3, 4}, {5, 4}, {7, 4}, {9, 4}};
  cfg.vantage[team_index(Team::Red)] = {
      {1, 10}, {3, 10}, {5, 10}, {7, 10}, {9, 10},
      {1, 7},  {3, 7},  {5, 7},  {7, 7},  {9, 7}};
  cfg.spawns[team_index(Team::Blue)] = {{1, 1}, {5, 1}, {9, 1}};
  cfg.spawns[team_index(Team::Red)] = {{1, 10}, {5, 10}, {9, 10}};

  // Left corridor, right corridor, flag-row sweep, centre corridor, front
  // sweep.  The first point of each defensive loop doubles as the tactic's
  // holding anchor once an intruder is detected.
  cfg.sentries = {SentryDef{{6, 5, 0}}, SentryDef{{9, 4, 8}}, SentryDef{{3, 2, 4}},
                  SentryDef{{8, 7, 2}}, SentryDef{{7, 6, 8}}};
  // Staging across the enemy front row, converging on a back-row target.
  cfg.pincers = {PincerDef{{5, 6, 7, 1}}, PincerDef{{6, 7, 8, 2}},
                 PincerDef{{7, 8, 9, 3}}};
  return cfg;
}

}  // namespace stratfuse::ctf
