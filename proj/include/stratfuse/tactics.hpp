#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stratfuse/macros.hpp"
#include "stratfuse/observation.hpp"
#include "stratfuse/sim_config.hpp"

namespace stratfuse::ctf {

// Hand-coded individual tactics.
//   DL / DR: defensive sentry patrol on the left / right flank
//   DC:      defensive sentry patrol on the centre front
//   AS:      scout enemy vantage points; pincer-attack the estimated flag
//   AA:      like AS, but retreats to a safe own-territory point whenever an
//            enemy robot is in close proximity
enum class TacticId : std::uint8_t { DL, DR, DC, AS, AA };

const char* tactic_name(TacticId t);
TacticId tactic_from_name(const std::string& name);

// A team tactic is one TacticId per robot slot.
using TeamTactic = std::vector<TacticId>;

// The four scripted opposition rosters for 3-robot teams.
std::vector<TeamTactic> default_roster();

// Mutable per-robot script memory, persistent across macro choices.
struct TacticState {
  int flag_estimate = -1;      // enemy vantage index; -1 while unknown
  bool pincer_launched = false;  // a pincer was sent at the current estimate
  int scan_cursor = 0;           // position in the scan order
  std::uint32_t visited = 0;     // enemy vantages already ruled out
};

// Everything a tactic script may look at: the acting robot's own, local view.
struct TacticView {
  int slot = 0;
  Team team = Team::Blue;
  Cell pos;
  MacroObservation obs;
  bool tag_eligible = false;
};

// Deterministic next macro choice for one robot following `tactic`.
int scripted_tactic_step(const SimConfig& cfg, const MacroSet& set, TacticId tactic,
                         const TacticView& view, TacticState& state);

}  // namespace stratfuse::ctf
