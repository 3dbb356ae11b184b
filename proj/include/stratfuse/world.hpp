#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stratfuse/grid.hpp"
#include "stratfuse/macros.hpp"
#include "stratfuse/observation.hpp"
#include "stratfuse/rng.hpp"
#include "stratfuse/sim_config.hpp"

namespace stratfuse::ctf {

// Progress of the scripted low-level policy inside one macro-action.
struct MacroExecution {
  int macro = -1;           // id in the MacroSet; -1 before the first choice
  int phase = 0;            // next waypoint to reach
  int steps = 0;            // primitive steps spent inside this macro
  bool finished = true;     // termination rule fired (robot must re-choose)
  bool interrupted = false; // finished because the robot was tagged
};

struct Robot {
  Team team = Team::Blue;
  int slot = 0;  // role index within its team
  Cell pos;
  Cell spawn;
  MacroExecution exec;
};

struct PincerSignal {
  int emitter = 0;
  Cell pos;
  int age = 0;
};

struct WorldState {
  std::vector<Robot> robots;  // all blue slots first, then red
  std::array<Cell, 2> flag{};
  std::array<bool, 2> flag_captured{};  // [team] -> that team's flag was taken
  int clock = 0;
  std::vector<PincerSignal> signals;

  bool capture_happened() const { return flag_captured[0] || flag_captured[1]; }
  bool terminal(const SimConfig& cfg) const {
    return capture_happened() || clock >= cfg.horizon;
  }
};

struct TagEvent {
  int tagger = 0;
  int victim = 0;
};

struct StepEvents {
  std::vector<TagEvent> tags;
  std::array<bool, 2> captured_by{};  // [team] -> that team captured this step
  bool episode_end = false;
};

struct StepResult {
  std::array<double, 2> team_reward{};  // undiscounted, per team
  StepEvents events;
};

struct MacroStep {
  Primitive intent = Primitive::Stay;
  bool terminated = false;
};

// Initial state: robots on their spawn cells, flags placed per config rule,
// clock zero.  Identical (config, seed) pairs yield identical states.
WorldState reset(const SimConfig& cfg, std::uint64_t seed);

// Instantaneous 6-bit observation for one robot.
MacroObservation observe(const SimConfig& cfg, const WorldState& state, int robot);

// Initiation rule of a macro for a robot in the current state.
bool macro_eligible(const SimConfig& cfg, const MacroSet& set, const WorldState& state,
                    int robot, int macro);

// Starts a macro (resets execution progress).  The caller is responsible for
// checking eligibility first.
void begin_macro(const SimConfig& cfg, const MacroSet& set, WorldState& state,
                 int robot, int macro);

// Next primitive intent from the robot's active macro, plus whether its
// termination rule already holds (e.g. Move to the current cell).  The
// waypoint policy steps greedily toward its target, sidesteps occupied cells,
// and slips to Stay with probability cfg.move_slip (drawn from `stream`).
MacroStep run_macro_step(const SimConfig& cfg, const MacroSet& set,
                         const WorldState& state, int robot, rng::Stream& stream);

// Advances the world one primitive step: simultaneous movement with
// deterministic collision resolution, tag and capture events, per-team
// rewards, and macro execution bookkeeping (including termination rules).
StepResult step_primitive(const SimConfig& cfg, const MacroSet& set, WorldState& state,
                          std::span<const Primitive> intents);

}  // namespace stratfuse::ctf
