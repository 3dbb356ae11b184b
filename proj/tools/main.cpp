// stratfuse command line: train stratagem controllers against scripted
// capture-the-flag opponents, fuse them into switching policies, evaluate,
// and print performance-bound tables.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stratfuse/errors.hpp"
#include "stratfuse/pipeline.hpp"

namespace {

using stratfuse::harness::ExperimentConfig;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string profile;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int episodes = 0;
  int threads = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config JSON");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--profile", opts.profile, "desk or full")
      ->check(CLI::IsMember({"desk", "full"}));
  cmd->add_option("--seed", opts.seed, "master seed")->each([&](const std::string&) {
    opts.seed_set = true;
  });
  cmd->add_option("--episodes", opts.episodes, "episodes per evaluation cell");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
}

ExperimentConfig make_config(const CommonOpts& opts) {
  ExperimentConfig cfg = opts.config_path.empty()
                             ? stratfuse::harness::default_experiment()
                             : stratfuse::harness::load_experiment(opts.config_path);
  if (!opts.profile.empty()) stratfuse::harness::apply_profile(cfg, opts.profile);
  if (opts.seed_set) cfg.master_seed = opts.seed;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.episodes > 0) cfg.eval_episodes = opts.episodes;
  if (opts.threads >= 0) cfg.threads = opts.threads;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized macro-action planning against switching adversaries"};
  app.require_subcommand(1);

  CommonOpts opts;

  CLI::App* train = app.add_subcommand(
      "train-stratagems", "train one controller team per scripted opposition tactic");
  add_common(train, opts);

  CLI::App* cross = app.add_subcommand(
      "cross-eval", "evaluate every policy against every opposition tactic");
  add_common(cross, opts);
  bool write_traces = false;
  cross->add_flag("--trace", write_traces, "write one example episode trace per cell");

  CLI::App* fuse = app.add_subcommand(
      "fuse", "connect trained stratagems into a switching policy");
  add_common(fuse, opts);
  std::string mode = "good-for-all";
  fuse->add_option("--mode", mode, "good-for-one or good-for-all")
      ->check(CLI::IsMember({"good-for-one", "good-for-all"}));

  CLI::App* unseen = app.add_subcommand(
      "eval-unseen", "compare switching policies on held-out switching adversaries");
  add_common(unseen, opts);

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "print performance-bound gap tables");
  add_common(bounds_cmd, opts);
  stratfuse::harness::BoundsGrid grid;
  bounds_cmd->add_option("--m", grid.m, "candidate counts to sweep");
  bounds_cmd->add_option("--delta", grid.delta, "confidence levels to sweep");
  bounds_cmd->add_option("--eps", grid.eps, "optimizer-quality bounds to sweep");
  bool no_coverage = false;
  bounds_cmd->add_flag("--no-coverage", no_coverage, "skip the empirical coverage check");
  bounds_cmd->add_option("--coverage-trials", grid.coverage_trials, "coverage trials");
  bounds_cmd->add_option("--coverage-m", grid.coverage_m, "coverage sample size m");
  bounds_cmd->add_option("--coverage-delta", grid.coverage_delta, "coverage confidence");

  CLI::App* plot = app.add_subcommand("plot", "render learning-curve CSVs as SVG charts");
  std::vector<std::string> curve_paths;
  std::string plot_out;
  plot->add_option("csv", curve_paths, "curve CSV files")->required();
  plot->add_option("--out", plot_out, "output directory (default: next to inputs)");

  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "run train-stratagems, fuse (both modes), cross-eval and eval-unseen");
  add_common(pipeline, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (plot->parsed()) {
      for (const std::string& f : stratfuse::harness::cmd_plot(curve_paths, plot_out))
        std::cout << f << "\n";
      return 0;
    }

    ExperimentConfig cfg = make_config(opts);
    if (train->parsed()) {
      stratfuse::harness::cmd_train_stratagems(cfg);
    } else if (cross->parsed()) {
      stratfuse::harness::cmd_cross_eval(cfg, write_traces);
      std::cout << stratfuse::harness::cross_eval_path(cfg) << "\n";
    } else if (fuse->parsed()) {
      stratfuse::harness::cmd_fuse(cfg, mode == "good-for-all");
      std::cout << stratfuse::harness::fused_path(cfg, mode == "good-for-all") << "\n";
    } else if (unseen->parsed()) {
      stratfuse::harness::cmd_eval_unseen(cfg);
      std::cout << stratfuse::harness::eval_unseen_path(cfg) << "\n";
    } else if (bounds_cmd->parsed()) {
      grid.run_coverage = !no_coverage;
      stratfuse::harness::cmd_bounds(cfg, grid, cfg.out_dir + "/bounds.csv",
                                     cfg.out_dir + "/coverage.csv");
      std::cout << cfg.out_dir + "/bounds.csv" << "\n";
    } else if (pipeline->parsed()) {
      stratfuse::harness::run_full_pipeline(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
