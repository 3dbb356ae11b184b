#pragma once

#include <vector>

#include "stratfuse/controller.hpp"
#include "stratfuse/gdice.hpp"
#include "stratfuse/unified.hpp"

namespace stratfuse::fsc {

// Candidate layout for a team of deterministic controllers, agent-major:
// per agent, k lambda rows (width = actions) then k * 64 delta rows
// (width = nodes).
gdice::RowWidths controller_widths(int agents, int nodes, int actions);

// Expands a candidate into one-hot controllers, one per agent.
std::vector<Controller> decode_controllers(int agents, int nodes, int actions,
                                           const gdice::CandidateWeights& w);

// Candidate layout for switching weights over r stratagems of k nodes,
// agent-major: per agent, r*k gate rows (width 2: stay / switch) then r*k
// edge rows (width (r-1)*k), the edge block omitted when r == 1.
gdice::RowWidths switching_widths(int agents, int r, int k);

// Builds per-agent switching controllers around frozen stratagems
// (indexed [stratagem][agent]) with deterministic gates and one-hot edges
// taken from the candidate.
std::vector<UnifiedController> decode_unified(
    const std::vector<std::vector<Controller>>& stratagems,
    const gdice::CandidateWeights& w);

}  // namespace stratfuse::fsc
