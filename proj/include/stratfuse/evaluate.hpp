#pragma once

#include <cstdint>
#include <vector>

#include "stratfuse/episode.hpp"
#include "stratfuse/tactics.hpp"

namespace stratfuse::ctf {

// Monte Carlo estimate of a team policy's expected return.
struct EvalReport {
  double mean_return = 0.0;
  double std_error = 0.0;
  int episodes = 0;
  std::vector<double> returns;  // per-episode blue returns, in episode order
};

// Evaluates `team` (blue) against `adversary` (red) over independent seeded
// episodes.  Episode i always runs with seed derive(seed, "episode", i), so
// the result is independent of scheduling.
//
// evaluate_blackbox is the OpenMP kernel; evaluate_blackbox_serial is the
// plain-loop reference used by tests and the benchmark.  Both produce
// bit-identical reports.
EvalReport evaluate_blackbox(const SimConfig& cfg, const MacroSet& set,
                             const TeamSpec& team, const TeamSpec& adversary,
                             int episodes, std::uint64_t seed, int threads = 0);
EvalReport evaluate_blackbox_serial(const SimConfig& cfg, const MacroSet& set,
                                    const TeamSpec& team, const TeamSpec& adversary,
                                    int episodes, std::uint64_t seed);

// A stationary scripted team: one fixed tactic per robot slot.
class TacticTeam : public TeamSpec {
 public:
  TacticTeam(const SimConfig& cfg, const MacroSet& set, TeamTactic tactics);
  std::unique_ptr<AgentPolicy> make_agent(int slot) const override;

 private:
  const SimConfig* cfg_;
  const MacroSet* set_;
  TeamTactic tactics_;
};

}  // namespace stratfuse::ctf
