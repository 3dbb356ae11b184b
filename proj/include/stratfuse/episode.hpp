#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stratfuse/rng.hpp"
#include "stratfuse/world.hpp"

namespace stratfuse::ctf {

// The per-decision view handed to a policy.  It contains only the acting
// robot's own, local information, so decentralization is enforced by the
// interface: a policy cannot read teammate or opponent state.
struct AgentContext {
  int robot = 0;  // global robot id
  int slot = 0;   // role index within the team
  Team team = Team::Blue;
  Cell pos;
  MacroObservation obs;
  const SimConfig* cfg = nullptr;
  const MacroSet* macros = nullptr;
  const std::vector<std::uint8_t>* eligible = nullptr;  // per macro id
};

// One agent's decision maker.  `choose` picks the next macro at a decision
// point; `macro_done` is called with the termination observation right before
// the next `choose`.
class AgentPolicy {
 public:
  virtual ~AgentPolicy() = default;
  virtual void begin(rng::Stream& stream) { (void)stream; }
  virtual int choose(const AgentContext& ctx, rng::Stream& stream) = 0;
  virtual void macro_done(const AgentContext& ctx, rng::Stream& stream) {
    (void)ctx;
    (void)stream;
  }
};

// Immutable description of a team; creates fresh per-episode agent policies.
// Specs are shared across evaluation workers and must stay stateless.
class TeamSpec {
 public:
  virtual ~TeamSpec() = default;
  virtual std::unique_ptr<AgentPolicy> make_agent(int slot) const = 0;
};

struct TraceChoice {
  int step = 0;  // clock value at which the macro was chosen
  int robot = 0;
  int macro = 0;
};

struct TraceTermination {
  int step = 0;  // clock value at which the termination was observed
  int robot = 0;
  int macro = 0;
  bool interrupted = false;
};

struct TraceStep {
  int step = 0;  // 1-based step number
  std::array<double, 2> team_reward{};
  std::vector<TagEvent> tags;
  std::array<bool, 2> captured_by{};
  std::vector<Cell> positions;  // per robot, post-step
  std::vector<int> macros;      // per robot, active macro id
};

struct EpisodeTrace {
  std::vector<TraceChoice> choices;
  std::vector<TraceTermination> terminations;
  std::vector<TraceStep> steps;
};

struct EpisodeResult {
  double blue_return = 0.0;
  double red_return = 0.0;
  int steps = 0;
  bool captured[2] = {false, false};  // [team] -> that team captured
  std::optional<EpisodeTrace> trace;
};

// Runs one seeded episode.  Robots pick a new macro-action only when their
// current one terminates; returns are discounted sums of team step rewards.
// Identical (config, specs, seed) yield identical results and traces.
EpisodeResult run_episode(const SimConfig& cfg, const MacroSet& set, const TeamSpec& blue,
                          const TeamSpec& red, std::uint64_t seed, bool record_trace = false);

// Line-delimited trace records: one line per (step, robot).
std::string trace_to_lines(const MacroSet& set, const EpisodeTrace& trace);

}  // namespace stratfuse::ctf
