#include "stratfuse/tactics.hpp"

#include <algorithm>
#include <numeric>

#include "stratfuse/errors.hpp"

namespace stratfuse::ctf {

const char* tactic_name(TacticId t) {
  switch (t) {
    case TacticId::DL: return "DL";
    case TacticId::DR: return "DR";
    case TacticId::DC: return "DC";
    case TacticId::AS: return "AS";
    case TacticId::AA: return "AA";
  }
  return "?";
}

TacticId tactic_from_name(const std::string& name) {
  if (name == "DL") return TacticId::DL;
  if (name == "DR") return TacticId::DR;
  if (name == "DC") return TacticId::DC;
  if (name == "AS") return TacticId::AS;
  if (name == "AA") return TacticId::AA;
  throw ConfigError("unknown tactic '" + name + "'");
}

std::vector<TeamTactic> default_roster() {
  return {
      {TacticId::DL, TacticId::DC, TacticId::DR},
      {TacticId::DL, TacticId::AS, TacticId::DR},
      {TacticId::AA, TacticId::DC, TacticId::AS},
      {TacticId::AS, TacticId::AA, TacticId::AS},
  };
}

namespace {

// Safe retreat point for AA: a back-row own vantage.
constexpr int kSafeVantage = 1;

// Sentry instances used by the defensive tactics (see default_config()).
int sentry_for(const MacroSet& set, TacticId t) {
  switch (t) {
    case TacticId::DL: return set.sentry(0);
    case TacticId::DR: return set.sentry(1);
    default: return set.sentry(3);  // DC holds the centre front
  }
}

// Holding point while intruders are nearby: the head of the patrol loop.
int anchor_for(const MacroSet& set, TacticId t) {
  return set.def(sentry_for(set, t)).points[0].index;
}

Cell enemy_vantage(const SimConfig& cfg, Team team, int index) {
  return cfg.vantage[static_cast<std::size_t>(team_index(other(team)))][static_cast<std::size_t>(index)];
}

// Enemy vantage indices ordered front row first (nearest the boundary),
// rotated by 3 per team slot so scouts fan out.
std::vector<int> scan_order(const SimConfig& cfg, Team team, int slot) {
  const int v = cfg.vantage_points_per_side;
  std::vector<int> order(static_cast<std::size_t>(v));
  std::iota(order.begin(), order.end(), 0);
  auto depth = [&](int k) {
    Cell c = enemy_vantage(cfg, team, k);
    int boundary = cfg.boundary_row();
    return team == Team::Blue ? c.y - boundary : boundary - 1 - c.y;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return depth(a) < depth(b); });
  std::rotate(order.begin(), order.begin() + (3 * slot) % v, order.end());
  return order;
}

// Best guess for the flag's vantage after a sighting: among the enemy
// vantages within sight range that have not been ruled out, prefer the
// deepest one (teams place flags well behind their front), then the nearest.
// A vantage the robot is standing on cannot hold the enemy flag.
int estimate_flag_vantage(const SimConfig& cfg, Team team, Cell pos, std::uint32_t visited) {
  int best = -1;
  int best_depth = -1;
  int best_d = 1 << 30;
  const int boundary = cfg.boundary_row();
  for (int k = 0; k < cfg.vantage_points_per_side; ++k) {
    if (visited & (1u << k)) continue;
    Cell v = enemy_vantage(cfg, team, k);
    int d = manhattan(pos, v);
    if (d == 0 || d > cfg.flag_sight_range) continue;
    int depth = team == Team::Blue ? v.y - boundary : boundary - 1 - v.y;
    if (depth > best_depth || (depth == best_depth && d < best_d)) {
      best = k;
      best_depth = depth;
      best_d = d;
    }
  }
  return best;
}

int pincer_toward(const SimConfig& cfg, const MacroSet& set, Team team, int estimate) {
  Cell target = enemy_vantage(cfg, team, estimate);
  int best = 0;
  int best_d = 1 << 30;
  for (int i = 0; i < 3; ++i) {
    Cell p4 = set.resolve(cfg, team, set.def(set.pincer(i)).points[3]);
    int d = manhattan(p4, target);
    if (d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return set.pincer(best);
}

// Shared scout behaviour of AS and AA.
int scout_step(const SimConfig& cfg, const MacroSet& set, const TacticView& view,
               TacticState& st) {
  // A vantage the robot stands on is ruled out for good.
  for (int k = 0; k < cfg.vantage_points_per_side; ++k)
    if (view.pos == enemy_vantage(cfg, view.team, k)) st.visited |= 1u << k;

  if (st.flag_estimate < 0 && view.obs.bits[1]) {
    st.flag_estimate = estimate_flag_vantage(cfg, view.team, view.pos, st.visited);
    st.pincer_launched = false;
  }

  if (st.flag_estimate >= 0) {
    Cell est = enemy_vantage(cfg, view.team, st.flag_estimate);
    if (view.pos == est) {
      // Standing on the estimated point with the game still running: the
      // flag is elsewhere, resume scanning.
      st.flag_estimate = -1;
      st.pincer_launched = false;
    } else if (!st.pincer_launched) {
      st.pincer_launched = true;
      return pincer_toward(cfg, set, view.team, st.flag_estimate);
    } else {
      return set.move_enemy(st.flag_estimate);
    }
  }

  std::vector<int> order = scan_order(cfg, view.team, view.slot);
  for (std::size_t tries = 0; tries < order.size(); ++tries) {
    int k = order[static_cast<std::size_t>(st.scan_cursor) % order.size()];
    st.scan_cursor += 1;
    if (!(st.visited & (1u << k))) return set.move_enemy(k);
  }
  return set.move_enemy(order[0]);  // everything visited: sweep again
}

}  // namespace

int scripted_tactic_step(const SimConfig& cfg, const MacroSet& set, TacticId tactic,
                         const TacticView& view, TacticState& state) {
  if (view.tag_eligible) return set.tag();
  switch (tactic) {
    case TacticId::DL:
    case TacticId::DR:
    case TacticId::DC:
      // Enemy detected: hold the corridor anchor with short hops,
      // re-deciding (and tagging) every step or two.
      if (view.obs.bits[2] || view.obs.bits[3])
        return set.move_own(anchor_for(set, tactic));
      return sentry_for(set, tactic);
    case TacticId::AS:
      return scout_step(cfg, set, view, state);
    case TacticId::AA:
      if (view.obs.bits[2]) return set.move_own(kSafeVantage);
      return scout_step(cfg, set, view, state);
  }
  return set.sentry(3);
}

}  // namespace stratfuse::ctf
