#include "stratfuse/world.hpp"

#include <algorithm>

#include "stratfuse/errors.hpp"
#include "stratfuse/rng.hpp"

namespace stratfuse::ctf {

namespace {

// Waypoints of a macro for a given robot, resolved to grid cells.
// Move: {target}; Sentry: {p1,p2,p3,p1}; Pincer: {p_role, p4}; Tag: {}.
int macro_waypoints(const SimConfig& cfg, const MacroSet& set, const Robot& r,
                    const MacroDef& def, std::array<Cell, 4>& out) {
  switch (def.kind) {
    case MacroKind::Move:
      out[0] = set.resolve(cfg, r.team, def.points[0]);
      return 1;
    case MacroKind::Sentry:
      out[0] = set.resolve(cfg, r.team, def.points[0]);
      out[1] = set.resolve(cfg, r.team, def.points[1]);
      out[2] = set.resolve(cfg, r.team, def.points[2]);
      out[3] = out[0];
      return 4;
    case MacroKind::Pincer: {
      int role = std::min(r.slot, 2);
      out[0] = set.resolve(cfg, r.team, def.points[static_cast<std::size_t>(role)]);
      out[1] = set.resolve(cfg, r.team, def.points[3]);
      return 2;
    }
    case MacroKind::Tag:
      return 0;
  }
  return 0;
}

void advance_phase(const SimConfig& cfg, const MacroSet& set, Robot& r) {
  const MacroDef& def = set.def(r.exec.macro);
  std::array<Cell, 4> wp;
  int count = macro_waypoints(cfg, set, r, def, wp);
  while (r.exec.phase < count && r.pos == wp[static_cast<std::size_t>(r.exec.phase)])
    ++r.exec.phase;
}

bool enemy_within(const SimConfig& cfg, const WorldState& state, const Robot& r, int range) {
  for (const Robot& other : state.robots)
    if (other.team != r.team && manhattan(r.pos, other.pos) <= range) return true;
  return false;
}

bool termination_holds(const SimConfig& cfg, const MacroSet& set, const WorldState& state,
                       const Robot& r) {
  if (r.exec.macro < 0) return true;
  if (r.exec.interrupted) return true;
  const MacroDef& def = set.def(r.exec.macro);
  if (def.kind == MacroKind::Tag) return r.exec.steps >= 1;
  std::array<Cell, 4> wp;
  int count = macro_waypoints(cfg, set, r, def, wp);
  if (r.exec.phase >= count) return true;
  // A patrol breaks off as soon as an opposing robot enters observation
  // range, so the policy can react at the next decision point.
  if (def.kind == MacroKind::Sentry && enemy_within(cfg, state, r, cfg.far_range)) return true;
  return r.exec.steps >= cfg.macro_timeout();
}

bool cell_free(const WorldState& state, Cell c) {
  for (const Robot& r : state.robots)
    if (r.pos == c) return false;
  return true;
}

// Respawn target for a tagged robot: its spawn cell, or the first free cell
// of its own territory in row-major order if the spawn is occupied.
Cell respawn_cell(const SimConfig& cfg, const WorldState& state, const Robot& r) {
  if (cell_free(state, r.spawn)) return r.spawn;
  int y0 = r.team == Team::Blue ? 0 : cfg.boundary_row();
  int y1 = r.team == Team::Blue ? cfg.boundary_row() : cfg.grid_height;
  for (int y = y0; y < y1; ++y)
    for (int x = 0; x < cfg.grid_width; ++x)
      if (cell_free(state, {x, y})) return {x, y};
  return r.spawn;  // a full territory cannot happen with <= 3 robots per side
}

void rebuild_signals(const MacroSet& set, WorldState& state) {
  state.signals.clear();
  for (std::size_t i = 0; i < state.robots.size(); ++i) {
    const Robot& r = state.robots[i];
    if (r.exec.macro >= 0 && !r.exec.finished &&
        set.def(r.exec.macro).kind == MacroKind::Pincer) {
      state.signals.push_back({static_cast<int>(i), r.pos, r.exec.steps});
    }
  }
}

}  // namespace

WorldState reset(const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  WorldState state;
  for (Team t : {Team::Blue, Team::Red}) {
    for (int slot = 0; slot < cfg.team_size(t); ++slot) {
      Robot r;
      r.team = t;
      r.slot = slot;
      r.spawn = cfg.spawns[static_cast<std::size_t>(team_index(t))][static_cast<std::size_t>(slot)];
      r.pos = r.spawn;
      state.robots.push_back(r);
    }
  }
  for (Team t : {Team::Blue, Team::Red}) {
    const auto ti = static_cast<std::size_t>(team_index(t));
    if (cfg.flag_rule == FlagRule::Fixed) {
      state.flag[ti] = cfg.vantage[ti][static_cast<std::size_t>(cfg.flag_index[ti])];
    } else {
      rng::Stream s(rng::derive(seed, "flag", static_cast<std::uint64_t>(ti)));
      state.flag[ti] =
          cfg.vantage[ti][static_cast<std::size_t>(s.next_below(static_cast<std::uint64_t>(cfg.vantage_points_per_side)))];
    }
  }
  return state;
}

MacroObservation observe(const SimConfig& cfg, const WorldState& state, int robot) {
  if (robot < 0 || robot >= static_cast<int>(state.robots.size()))
    throw UsageError("observe: unknown robot id");
  const Robot& self = state.robots[static_cast<std::size_t>(robot)];

  std::array<bool, kObservationBits> bits{};
  bits[0] = cfg.territory_of(self.pos) == self.team;
  bits[1] = manhattan(self.pos, state.flag[static_cast<std::size_t>(team_index(other(self.team)))]) <=
            cfg.flag_sight_range;
  for (std::size_t i = 0; i < state.robots.size(); ++i) {
    if (static_cast<int>(i) == robot) continue;
    const Robot& r = state.robots[i];
    int d = manhattan(self.pos, r.pos);
    if (r.team != self.team) {
      if (d <= cfg.close_range) bits[2] = true;
      else if (d <= cfg.far_range) bits[3] = true;
    } else if (d <= cfg.close_range) {
      bits[4] = true;
    }
  }
  for (const PincerSignal& s : state.signals) {
    if (s.emitter == robot) continue;
    const Robot& emitter = state.robots[static_cast<std::size_t>(s.emitter)];
    if (emitter.team == self.team && manhattan(self.pos, s.pos) <= cfg.far_range) {
      bits[5] = true;
      break;
    }
  }
  return MacroObservation::from_bits(bits);
}

bool macro_eligible(const SimConfig& cfg, const MacroSet& set, const WorldState& state,
                    int robot, int macro) {
  const Robot& self = state.robots[static_cast<std::size_t>(robot)];
  const MacroDef& def = set.def(macro);
  switch (def.kind) {
    case MacroKind::Move:
    case MacroKind::Sentry:
      return true;
    case MacroKind::Pincer:
      return self.slot <= 2;
    case MacroKind::Tag: {
      if (cfg.territory_of(self.pos) != self.team) return false;
      for (const Robot& r : state.robots) {
        if (r.team == self.team) continue;
        if (cfg.territory_of(r.pos) == self.team &&
            manhattan(self.pos, r.pos) <= cfg.tag_range)
          return true;
      }
      return false;
    }
  }
  return false;
}

void begin_macro(const SimConfig& cfg, const MacroSet& set, WorldState& state,
                 int robot, int macro) {
  Robot& r = state.robots[static_cast<std::size_t>(robot)];
  r.exec = MacroExecution{macro, 0, 0, false, false};
  if (set.def(macro).kind != MacroKind::Tag) advance_phase(cfg, set, r);
}

MacroStep run_macro_step(const SimConfig& cfg, const MacroSet& set,
                         const WorldState& state, int robot, rng::Stream& stream) {
  const Robot& r = state.robots[static_cast<std::size_t>(robot)];
  if (r.exec.macro < 0) throw UsageError("run_macro_step: robot has no active macro");
  if (termination_holds(cfg, set, state, r)) return {Primitive::Stay, true};

  const MacroDef& def = set.def(r.exec.macro);
  if (def.kind == MacroKind::Tag) return {Primitive::Tag, false};
  std::array<Cell, 4> wp;
  macro_waypoints(cfg, set, r, def, wp);
  const Cell target = wp[static_cast<std::size_t>(r.exec.phase)];

  // Greedy step with deterministic sidestepping around occupied cells.
  Primitive intent = step_toward(r.pos, target);
  if (intent != Primitive::Stay && !cell_free(state, apply_move(r.pos, intent))) {
    const bool horizontal = intent == Primitive::Left || intent == Primitive::Right;
    std::array<Primitive, 2> orth = horizontal
                                        ? std::array<Primitive, 2>{Primitive::Up, Primitive::Down}
                                        : std::array<Primitive, 2>{Primitive::Right, Primitive::Left};
    // Prefer the orthogonal direction that closes the remaining gap.
    if (horizontal && r.pos.y > target.y) std::swap(orth[0], orth[1]);
    if (!horizontal && r.pos.x > target.x) std::swap(orth[0], orth[1]);
    intent = Primitive::Stay;
    for (Primitive side : orth) {
      Cell dest = apply_move(r.pos, side);
      if (cfg.in_bounds(dest) && cell_free(state, dest)) {
        intent = side;
        break;
      }
    }
  }

  // Actuation slip: the navigation occasionally loses a step.
  if (intent != Primitive::Stay && cfg.move_slip > 0.0 &&
      stream.next_double() < cfg.move_slip)
    intent = Primitive::Stay;
  return {intent, false};
}

StepResult step_primitive(const SimConfig& cfg, const MacroSet& set, WorldState& state,
                          std::span<const Primitive> intents) {
  const std::size_t n = state.robots.size();
  if (intents.size() != n) throw UsageError("step_primitive: intent count mismatch");
  if (state.terminal(cfg)) throw UsageError("step_primitive: episode is already terminal");

  StepResult result;

  // Simultaneous movement.  A move is blocked when its target is occupied by
  // a robot that stays put, claimed by a lower-id mover, or part of a swap.
  std::vector<Cell> target(n);
  std::vector<bool> moving(n);
  for (std::size_t i = 0; i < n; ++i) {
    Cell t = apply_move(state.robots[i].pos, intents[i]);
    if (!cfg.in_bounds(t)) t = state.robots[i].pos;
    target[i] = t;
    moving[i] = !(t == state.robots[i].pos);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!moving[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        bool blocked = false;
        if (moving[j]) {
          if (target[j] == target[i] && j < i) blocked = true;                // priority
          if (target[j] == state.robots[i].pos && target[i] == state.robots[j].pos)
            blocked = true;                                                   // swap
        } else if (state.robots[j].pos == target[i]) {
          blocked = true;  // occupied by a stationary robot
        }
        if (blocked) {
          moving[i] = false;
          target[i] = state.robots[i].pos;
          changed = true;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) state.robots[i].pos = target[i];

  // Tag resolution against post-move positions; each victim at most once.
  std::vector<bool> tagged(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (intents[i] != Primitive::Tag) continue;
    const Robot& tagger = state.robots[i];
    if (cfg.territory_of(tagger.pos) != tagger.team) continue;
    int best = -1;
    int best_d = cfg.tag_range + 1;
    for (std::size_t j = 0; j < n; ++j) {
      const Robot& victim = state.robots[j];
      if (victim.team == tagger.team || tagged[j]) continue;
      if (cfg.territory_of(victim.pos) != tagger.team) continue;
      int d = manhattan(tagger.pos, victim.pos);
      if (d <= cfg.tag_range && d < best_d) {
        best = static_cast<int>(j);
        best_d = d;
      }
    }
    if (best >= 0) {
      tagged[static_cast<std::size_t>(best)] = true;
      result.events.tags.push_back({static_cast<int>(i), best});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!tagged[j]) continue;
    Robot& victim = state.robots[j];
    victim.pos = respawn_cell(cfg, state, victim);
    victim.exec.interrupted = true;
  }

  // Capture: an attacker standing on the enemy flag cell ends the game.
  for (std::size_t i = 0; i < n; ++i) {
    const Robot& r = state.robots[i];
    const auto enemy = static_cast<std::size_t>(team_index(other(r.team)));
    if (r.pos == state.flag[enemy]) {
      result.events.captured_by[static_cast<std::size_t>(team_index(r.team))] = true;
      state.flag_captured[enemy] = true;
    }
  }

  // Rewards: team-local step penalties plus zero-sum event components.
  for (Team t : {Team::Blue, Team::Red}) {
    const auto ti = static_cast<std::size_t>(team_index(t));
    result.team_reward[ti] = cfg.step_penalty * cfg.team_size(t);
  }
  for (const TagEvent& e : result.events.tags) {
    const auto tagger_team =
        static_cast<std::size_t>(team_index(state.robots[static_cast<std::size_t>(e.tagger)].team));
    result.team_reward[tagger_team] += cfg.tag_reward;
    result.team_reward[1 - tagger_team] -= cfg.tag_reward;
  }
  for (Team t : {Team::Blue, Team::Red}) {
    const auto ti = static_cast<std::size_t>(team_index(t));
    if (result.events.captured_by[ti]) {
      result.team_reward[ti] += cfg.capture_reward;
      result.team_reward[1 - ti] -= cfg.capture_reward;
    }
  }

  state.clock += 1;

  // Macro execution bookkeeping.
  for (std::size_t i = 0; i < n; ++i) {
    Robot& r = state.robots[i];
    if (r.exec.macro < 0 || r.exec.finished) continue;
    r.exec.steps += 1;
    if (set.def(r.exec.macro).kind != MacroKind::Tag) advance_phase(cfg, set, r);
    r.exec.finished = termination_holds(cfg, set, state, r);
  }
  rebuild_signals(set, state);

  result.events.episode_end = state.terminal(cfg);
  return result;
}

}  // namespace stratfuse::ctf
