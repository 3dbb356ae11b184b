#include "stratfuse/macros.hpp"

namespace stratfuse::ctf {

MacroSet::MacroSet(const SimConfig& cfg) : vantage_count_(cfg.vantage_points_per_side) {
  const int v = vantage_count_;
  defs_.reserve(static_cast<std::size_t>(2 * v + 5 + 3 + 1));
  for (int side = 0; side < 2; ++side) {
    for (int k = 0; k < v; ++k) {
      MacroDef d;
      d.kind = MacroKind::Move;
      d.points[0] = {side == 1, k};
      d.instance = side * v + k;
      d.name = std::string("Move(") + (side == 1 ? "enemy " : "own ") + std::to_string(k) + ")";
      defs_.push_back(std::move(d));
    }
  }
  for (int i = 0; i < 5; ++i) {
    MacroDef d;
    d.kind = MacroKind::Sentry;
    for (int j = 0; j < 3; ++j) d.points[static_cast<std::size_t>(j)] = {false, cfg.sentries[static_cast<std::size_t>(i)].points[static_cast<std::size_t>(j)]};
    d.instance = i;
    d.name = "Sentry(" + std::to_string(i) + ")";
    defs_.push_back(std::move(d));
  }
  for (int i = 0; i < 3; ++i) {
    MacroDef d;
    d.kind = MacroKind::Pincer;
    for (int j = 0; j < 4; ++j) d.points[static_cast<std::size_t>(j)] = {true, cfg.pincers[static_cast<std::size_t>(i)].points[static_cast<std::size_t>(j)]};
    d.instance = i;
    d.name = "Pincer(" + std::to_string(i) + ")";
    defs_.push_back(std::move(d));
  }
  MacroDef t;
  t.kind = MacroKind::Tag;
  t.name = "Tag";
  defs_.push_back(std::move(t));
}

Cell MacroSet::resolve(const SimConfig& cfg, Team team, VantageRef ref) const {
  Team side = ref.enemy ? other(team) : team;
  return cfg.vantage[static_cast<std::size_t>(team_index(side))][static_cast<std::size_t>(ref.index)];
}

}  // namespace stratfuse::ctf
