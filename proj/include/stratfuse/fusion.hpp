#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stratfuse/encoding.hpp"
#include "stratfuse/evaluate.hpp"
#include "stratfuse/gdice.hpp"
#include "stratfuse/policies.hpp"
#include "stratfuse/tactics.hpp"

namespace stratfuse::fusion {

// Row-stochastic switching matrix of one adversary agent over its r tactics.
struct AgentSwitchMatrix {
  int r = 0;
  std::vector<double> p;  // r x r, row-major

  std::span<const double> row(int s) const {
    return {p.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(r),
            static_cast<std::size_t>(r)};
  }
  void validate() const;

  static AgentSwitchMatrix identity(int r);
  static AgentSwitchMatrix uniform(int r);
};

// One matrix per adversary slot.
using AdversarySwitchWeights = std::vector<AgentSwitchMatrix>;

// Independent symmetric Dirichlet per matrix row.
struct SwitchWeightPrior {
  double concentration = 1.0;
  int candidate_count = 8;  // m
  std::uint64_t seed = 0;

  void validate() const;
};

// One full team draw: every row of every agent matrix drawn independently.
AdversarySwitchWeights sample_switch_weights(const SwitchWeightPrior& prior, int agents,
                                             int r, rng::Stream& stream);

// Next tactic index for one agent, drawn from row `current`.  Applied at
// that agent's own macro terminations.
int adversary_switch_step(const AgentSwitchMatrix& u, int current, rng::Stream& stream);

// Adversary team whose agents independently re-draw their tactic from their
// switching matrix at each of their own macro terminations.  The roster
// holds the stationary team tactics; agent `slot` switches among column
// `slot` of the roster.
class SwitchingTacticTeam : public ctf::TeamSpec {
 public:
  SwitchingTacticTeam(const ctf::SimConfig& cfg, const ctf::MacroSet& set,
                      std::vector<ctf::TeamTactic> roster, AdversarySwitchWeights u,
                      int initial_tactic = 0);

  std::unique_ptr<ctf::AgentPolicy> make_agent(int slot) const override;

 private:
  const ctf::SimConfig* cfg_;
  const ctf::MacroSet* set_;
  std::vector<std::vector<ctf::TacticId>> by_slot_;  // [slot][stratagem]
  AdversarySwitchWeights u_;
  int initial_;
};

// Mean of evaluate_blackbox over the candidate adversaries, every candidate
// evaluated with the same seed (common random numbers), so duplicate
// candidates contribute identical values.
double surrogate_objective(const ctf::SimConfig& cfg, const ctf::MacroSet& set,
                           const ctf::TeamSpec& team,
                           const std::vector<ctf::TeamTactic>& roster,
                           std::span<const AdversarySwitchWeights> candidates,
                           int initial_tactic, int episodes, std::uint64_t seed,
                           int threads = 1);

struct FusionProblem {
  ctf::SimConfig sim;
  std::vector<std::vector<fsc::Controller>> stratagems;  // [stratagem][agent]
  std::vector<ctf::TeamTactic> roster;                   // [stratagem][slot]
  SwitchWeightPrior prior;
  std::vector<AdversarySwitchWeights> candidates;  // explicit u set; else prior draws
  gdice::GDiceConfig search;
  int adversary_initial_tactic = 0;

  void validate() const;
};

struct FusionResult {
  std::vector<fsc::UnifiedController> team;  // decoded best candidate, per agent
  gdice::OptimizeResult search;
  std::vector<AdversarySwitchWeights> candidates_used;
};

// Optimizes gates and inter-controller edges only; the stratagems' lambda and
// delta tables are frozen and copied verbatim into the result.
FusionResult optimize_switching(const FusionProblem& problem);
FusionResult optimize_switching_serial(const FusionProblem& problem);

}  // namespace stratfuse::fusion
