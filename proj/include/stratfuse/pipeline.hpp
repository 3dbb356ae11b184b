#pragma once

#include <string>
#include <vector>

#include "stratfuse/experiment.hpp"

namespace stratfuse::harness {

// Output file names inside cfg.out_dir.
std::string stratagem_path(const ExperimentConfig& cfg, int s);
std::string train_curve_path(const ExperimentConfig& cfg, int s);
std::string fused_path(const ExperimentConfig& cfg, bool good_for_all);
std::string fuse_curve_path(const ExperimentConfig& cfg, bool good_for_all);
std::string u_candidates_path(const ExperimentConfig& cfg);
std::string cross_eval_path(const ExperimentConfig& cfg);
std::string eval_unseen_path(const ExperimentConfig& cfg);
std::string heldout_u_path(const ExperimentConfig& cfg);

// Trains one stratagem team per adversary roster row and writes the
// controller files and learning curves.  Returns controllers as [s][agent].
std::vector<std::vector<fsc::Controller>> cmd_train_stratagems(const ExperimentConfig& cfg);

// Fuses trained stratagems into a switching team.  good_for_all=false uses
// the single known fixed_u adversary; good_for_all=true optimizes against
// prior.candidate_count sampled adversaries and also writes the candidate
// set as CSV.
std::vector<fsc::UnifiedController> cmd_fuse(const ExperimentConfig& cfg, bool good_for_all);

// Full evaluation matrix: stratagems plus the good-for-one switching policy
// against every stationary roster tactic and the fixed-u switching tactic.
// Optionally writes one example episode trace per matrix cell.
void cmd_cross_eval(const ExperimentConfig& cfg, bool write_traces = false);

// Compares good-for-one and good-for-all switching policies on freshly drawn
// held-out switching adversaries.
void cmd_eval_unseen(const ExperimentConfig& cfg);

struct BoundsGrid {
  std::vector<int> m = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
  std::vector<double> delta = {0.5, 0.25, 0.1, 0.05, 0.01};
  std::vector<double> eps = {0.0, 1.0};
  bool run_coverage = true;
  int coverage_trials = 1000;
  int coverage_m = 4;
  double coverage_delta = 0.1;
};

// Writes the gap table (and optionally the coverage report) as CSV.
void cmd_bounds(const ExperimentConfig& cfg, const BoundsGrid& grid,
                const std::string& bounds_csv, const std::string& coverage_csv);

// Renders one SVG per learning-curve CSV, next to the input files or into
// out_dir when given.
std::vector<std::string> cmd_plot(const std::vector<std::string>& curve_csvs,
                                  const std::string& out_dir);

// train -> fuse (both modes) -> cross-eval -> eval-unseen, all under the
// master seed.  Used by the CLI and the end-to-end determinism test.
void run_full_pipeline(const ExperimentConfig& cfg);

}  // namespace stratfuse::harness
