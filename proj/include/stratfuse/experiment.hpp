#pragma once

#include <cstdint>
#include <string>

#include "stratfuse/fusion.hpp"
#include "stratfuse/gdice.hpp"
#include "stratfuse/sim_config.hpp"
#include "stratfuse/tactics.hpp"

namespace stratfuse::harness {

// Everything the experiment pipeline needs, loadable from a JSON config file
// (see README for the schema).  Defaults give the desk-scale profile.
struct ExperimentConfig {
  ctf::SimConfig sim;
  int nodes = 3;  // controller nodes per stratagem (k)

  gdice::GDiceConfig train;  // per-stratagem search
  gdice::GDiceConfig fuse;   // switching-weight search

  fusion::SwitchWeightPrior prior;            // good-for-all candidate source
  std::vector<ctf::TeamTactic> roster;        // adversary team tactics (r rows)
  fusion::AdversarySwitchWeights fixed_u;     // the known-weights adversary
  int adversary_initial_tactic = 0;

  int eval_episodes = 200;  // episodes per evaluation cell
  int heldout_count = 6;    // held-out switching adversaries (J)
  double init_gate = 0.1;

  int threads = 0;  // 0 = all available
  std::uint64_t master_seed = 42;
  std::string out_dir = "out";
  std::string profile = "desk";

  int stratagem_count() const { return static_cast<int>(roster.size()); }
  void validate() const;
};

ExperimentConfig default_experiment();

// profile "desk": fast CI-scale runs; "full": paper-scale episode counts.
void apply_profile(ExperimentConfig& cfg, const std::string& profile);

// Partial JSON: absent keys keep their defaults.
ExperimentConfig load_experiment(const std::string& path);
ExperimentConfig parse_experiment(const std::string& json_text);

// Canonical JSON dump (sorted keys); config_hash is FNV-1a over it.
std::string experiment_to_json(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// "# config=<hex> seed=<seed>" - the provenance comment on every output CSV.
std::string provenance_comment(const ExperimentConfig& cfg);

}  // namespace stratfuse::harness
