#include "stratfuse/pipeline.hpp"

#include <filesystem>
#include <limits>
#include <sstream>

#include "stratfuse/bounds.hpp"
#include "stratfuse/coverage.hpp"
#include "stratfuse/csv.hpp"
#include "stratfuse/errors.hpp"
#include "stratfuse/svg.hpp"

namespace stratfuse::harness {

namespace fs = std::filesystem;

std::string stratagem_path(const ExperimentConfig& cfg, int s) {
  return cfg.out_dir + "/stratagem_" + std::to_string(s + 1) + ".fsc";
}
std::string train_curve_path(const ExperimentConfig& cfg, int s) {
  return cfg.out_dir + "/train_curve_" + std::to_string(s + 1) + ".csv";
}
std::string fused_path(const ExperimentConfig& cfg, bool good_for_all) {
  return cfg.out_dir + (good_for_all ? "/fused_good_for_all.ufsc" : "/fused_good_for_one.ufsc");
}
std::string fuse_curve_path(const ExperimentConfig& cfg, bool good_for_all) {
  return cfg.out_dir +
         (good_for_all ? "/fuse_curve_good_for_all.csv" : "/fuse_curve_good_for_one.csv");
}
std::string u_candidates_path(const ExperimentConfig& cfg) {
  return cfg.out_dir + "/u_candidates_good_for_all.csv";
}
std::string cross_eval_path(const ExperimentConfig& cfg) { return cfg.out_dir + "/cross_eval.csv"; }
std::string eval_unseen_path(const ExperimentConfig& cfg) {
  return cfg.out_dir + "/eval_unseen.csv";
}
std::string heldout_u_path(const ExperimentConfig& cfg) { return cfg.out_dir + "/heldout_u.csv"; }

namespace {

void ensure_out_dir(const ExperimentConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
}

void write_u_set_csv(const std::string& path, const ExperimentConfig& cfg,
                     std::span<const fusion::AdversarySwitchWeights> set) {
  std::ostringstream out;
  out << "# " << provenance_comment(cfg) << "\n";
  const int r = cfg.stratagem_count();
  out << "candidate,agent,from";
  for (int s = 0; s < r; ++s) out << ",p" << s;
  out << "\n";
  for (std::size_t c = 0; c < set.size(); ++c) {
    for (std::size_t a = 0; a < set[c].size(); ++a) {
      for (int row = 0; row < r; ++row) {
        out << c << ',' << a << ',' << row;
        for (double v : set[c][a].row(row)) out << ',' << csv::format_double(v);
        out << '\n';
      }
    }
  }
  csv::write_file(path, out.str());
}

// Evaluation protocol shared by the cross-eval matrix and the held-out
// comparison: each (policy, adversary) cell gets its own labeled seed.
ctf::EvalReport eval_cell(const ExperimentConfig& cfg, const ctf::MacroSet& set,
                          const ctf::TeamSpec& team, const ctf::TeamSpec& adversary,
                          const std::string& label) {
  std::uint64_t seed = rng::derive(cfg.master_seed, label);
  return ctf::evaluate_blackbox(cfg.sim, set, team, adversary, cfg.eval_episodes, seed,
                                cfg.threads);
}

std::vector<std::vector<fsc::Controller>> load_stratagems(const ExperimentConfig& cfg) {
  std::vector<std::vector<fsc::Controller>> stratagems;
  for (int s = 0; s < cfg.stratagem_count(); ++s)
    stratagems.push_back(fsc::load_team(stratagem_path(cfg, s)));
  return stratagems;
}

}  // namespace

std::vector<std::vector<fsc::Controller>> cmd_train_stratagems(const ExperimentConfig& cfg) {
  cfg.validate();
  ensure_out_dir(cfg);
  ctf::MacroSet set(cfg.sim);
  const int agents = cfg.sim.blue_team_size;
  const int actions = set.size();

  std::vector<std::vector<fsc::Controller>> stratagems;
  gdice::RowWidths widths = fsc::controller_widths(agents, cfg.nodes, actions);

  for (int s = 0; s < cfg.stratagem_count(); ++s) {
    ctf::TacticTeam adversary(cfg.sim, set, cfg.roster[static_cast<std::size_t>(s)]);
    gdice::Blackbox blackbox = [&](const gdice::CandidateWeights& w, std::uint64_t eval_seed) {
      fsc::ControllerTeam team(fsc::decode_controllers(agents, cfg.nodes, actions, w));
      return ctf::evaluate_blackbox_serial(cfg.sim, set, team, adversary,
                                           cfg.train.episodes_per_evaluation, eval_seed)
          .mean_return;
    };
    gdice::GDiceConfig search = cfg.train;
    search.seed = rng::derive(cfg.master_seed, "train", static_cast<std::uint64_t>(s));
    search.threads = cfg.threads;
    gdice::OptimizeResult result = gdice::optimize(search, widths, blackbox);

    // Final selection on a held-out evaluation: the best sampled candidate's
    // training value is the maximum of noisy estimates, so re-rank it against
    // the distribution mode at the full episode budget.
    std::uint64_t select_seed =
        rng::derive(cfg.master_seed, "train-select", static_cast<std::uint64_t>(s));
    gdice::CandidateWeights pick = result.best;
    double pick_value = -std::numeric_limits<double>::infinity();
    for (const gdice::CandidateWeights& w : {result.best, gdice::distribution_mode(result.distribution)}) {
      fsc::ControllerTeam team(fsc::decode_controllers(agents, cfg.nodes, actions, w));
      double v = ctf::evaluate_blackbox(cfg.sim, set, team, adversary, cfg.eval_episodes,
                                        select_seed, cfg.threads)
                     .mean_return;
      if (v > pick_value) {
        pick_value = v;
        pick = w;
      }
    }

    std::vector<fsc::Controller> team =
        fsc::decode_controllers(agents, cfg.nodes, actions, pick);
    fsc::save_team(stratagem_path(cfg, s), team);
    csv::write_curve(train_curve_path(cfg, s), result.curve,
                     provenance_comment(cfg) + " phase=train stratagem=" + std::to_string(s + 1));
    stratagems.push_back(std::move(team));
  }
  return stratagems;
}

std::vector<fsc::UnifiedController> cmd_fuse(const ExperimentConfig& cfg, bool good_for_all) {
  cfg.validate();
  ensure_out_dir(cfg);

  fusion::FusionProblem problem;
  problem.sim = cfg.sim;
  problem.stratagems = load_stratagems(cfg);
  problem.roster = cfg.roster;
  problem.prior = cfg.prior;
  problem.prior.seed = rng::derive(cfg.master_seed, "u-prior");
  problem.adversary_initial_tactic = cfg.adversary_initial_tactic;
  problem.search = cfg.fuse;
  problem.search.seed =
      rng::derive(cfg.master_seed, good_for_all ? "fuse-all" : "fuse-one");
  problem.search.threads = cfg.threads;
  if (!good_for_all) problem.candidates = {cfg.fixed_u};

  fusion::FusionResult result = fusion::optimize_switching(problem);

  // Same held-out final selection as in training: best sample vs mode.
  ctf::MacroSet set(cfg.sim);
  std::uint64_t select_seed =
      rng::derive(cfg.master_seed, good_for_all ? "fuse-select-all" : "fuse-select-one");
  gdice::CandidateWeights pick = result.search.best;
  double pick_value = -std::numeric_limits<double>::infinity();
  for (const gdice::CandidateWeights& w :
       {result.search.best, gdice::distribution_mode(result.search.distribution)}) {
    fsc::UnifiedTeam team(fsc::decode_unified(problem.stratagems, w));
    double v = fusion::surrogate_objective(cfg.sim, set, team, problem.roster,
                                           result.candidates_used,
                                           cfg.adversary_initial_tactic, cfg.eval_episodes,
                                           select_seed, cfg.threads);
    if (v > pick_value) {
      pick_value = v;
      pick = w;
    }
  }
  result.team = fsc::decode_unified(problem.stratagems, pick);

  fsc::save_unified_team(fused_path(cfg, good_for_all), result.team);
  csv::write_curve(fuse_curve_path(cfg, good_for_all), result.search.curve,
                   provenance_comment(cfg) +
                       (good_for_all ? " phase=fuse mode=good-for-all"
                                     : " phase=fuse mode=good-for-one"));
  if (good_for_all)
    write_u_set_csv(u_candidates_path(cfg), cfg, result.candidates_used);
  return std::move(result.team);
}

void cmd_cross_eval(const ExperimentConfig& cfg, bool write_traces) {
  cfg.validate();
  ensure_out_dir(cfg);
  ctf::MacroSet set(cfg.sim);
  const int r = cfg.stratagem_count();

  std::vector<std::unique_ptr<ctf::TeamSpec>> policies;
  std::vector<std::string> policy_names;
  std::vector<std::vector<fsc::Controller>> stratagems = load_stratagems(cfg);
  for (int s = 0; s < r; ++s) {
    policies.push_back(std::make_unique<fsc::ControllerTeam>(stratagems[static_cast<std::size_t>(s)]));
    policy_names.push_back("C" + std::to_string(s + 1));
  }
  policies.push_back(
      std::make_unique<fsc::UnifiedTeam>(fsc::load_unified_team(fused_path(cfg, false))));
  policy_names.push_back("Cw");

  std::vector<std::unique_ptr<ctf::TeamSpec>> adversaries;
  std::vector<std::string> adversary_names;
  for (int s = 0; s < r; ++s) {
    adversaries.push_back(
        std::make_unique<ctf::TacticTeam>(cfg.sim, set, cfg.roster[static_cast<std::size_t>(s)]));
    adversary_names.push_back("E" + std::to_string(s + 1));
  }
  adversaries.push_back(std::make_unique<fusion::SwitchingTacticTeam>(
      cfg.sim, set, cfg.roster, cfg.fixed_u, cfg.adversary_initial_tactic));
  adversary_names.push_back("Eu");

  std::ostringstream out;
  out << "# " << provenance_comment(cfg) << " episodes=" << cfg.eval_episodes << "\n";
  out << "policy";
  for (const std::string& a : adversary_names) out << ',' << a << "_mean," << a << "_stderr";
  out << "\n";

  for (std::size_t p = 0; p < policies.size(); ++p) {
    out << policy_names[p];
    for (std::size_t a = 0; a < adversaries.size(); ++a) {
      std::string label = "cross-eval/" + policy_names[p] + "/" + adversary_names[a];
      ctf::EvalReport report = eval_cell(cfg, set, *policies[p], *adversaries[a], label);
      out << ',' << csv::format_double(report.mean_return) << ','
          << csv::format_double(report.std_error);

      if (write_traces) {
        ctf::EpisodeResult episode = ctf::run_episode(
            cfg.sim, set, *policies[p], *adversaries[a],
            rng::derive(rng::derive(cfg.master_seed, label), "episode", 0), true);
        csv::write_file(cfg.out_dir + "/trace_" + policy_names[p] + "_" + adversary_names[a] + ".txt",
                        trace_to_lines(set, *episode.trace));
      }
    }
    out << '\n';
  }
  csv::write_file(cross_eval_path(cfg), out.str());
}

void cmd_eval_unseen(const ExperimentConfig& cfg) {
  cfg.validate();
  ensure_out_dir(cfg);
  ctf::MacroSet set(cfg.sim);
  const int r = cfg.stratagem_count();

  fsc::UnifiedTeam good_for_one(fsc::load_unified_team(fused_path(cfg, false)));
  fsc::UnifiedTeam good_for_all(fsc::load_unified_team(fused_path(cfg, true)));

  // Fresh held-out draws, disjoint from the optimization candidates by label.
  fusion::SwitchWeightPrior prior = cfg.prior;
  rng::Stream stream(rng::derive(cfg.master_seed, "unseen-u"));
  std::vector<fusion::AdversarySwitchWeights> heldout;
  for (int j = 0; j < cfg.heldout_count; ++j)
    heldout.push_back(
        fusion::sample_switch_weights(prior, cfg.sim.red_team_size, r, stream));
  write_u_set_csv(heldout_u_path(cfg), cfg, heldout);

  std::ostringstream out;
  out << "# " << provenance_comment(cfg) << " episodes=" << cfg.eval_episodes << "\n";
  out << "policy";
  for (int j = 0; j < cfg.heldout_count; ++j)
    out << ",u" << (j + 1) << "_mean,u" << (j + 1) << "_stderr";
  out << "\n";

  const ctf::TeamSpec* teams[2] = {&good_for_one, &good_for_all};
  const char* names[2] = {"good_for_one", "good_for_all"};
  for (int t = 0; t < 2; ++t) {
    out << names[t];
    for (int j = 0; j < cfg.heldout_count; ++j) {
      fusion::SwitchingTacticTeam adversary(cfg.sim, set, cfg.roster,
                                            heldout[static_cast<std::size_t>(j)],
                                            cfg.adversary_initial_tactic);
      // Common random numbers across the two policies for a paired test.
      std::string label = "eval-unseen/u" + std::to_string(j + 1);
      ctf::EvalReport report = eval_cell(cfg, set, *teams[t], adversary, label);
      out << ',' << csv::format_double(report.mean_return) << ','
          << csv::format_double(report.std_error);
    }
    out << '\n';
  }
  csv::write_file(eval_unseen_path(cfg), out.str());
}

void cmd_bounds(const ExperimentConfig& cfg, const BoundsGrid& grid,
                const std::string& bounds_csv, const std::string& coverage_csv) {
  for (const std::string& path : {bounds_csv, coverage_csv}) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) {
      std::error_code ec;
      fs::create_directories(parent, ec);
      if (ec) throw IoError("cannot create directory '" + parent.string() + "'");
    }
  }
  for (double d : grid.delta)
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("bounds grid: delta must be in (0,1)");
  for (int m : grid.m)
    if (m < 1) throw ConfigError("bounds grid: m must be >= 1");
  for (double e : grid.eps)
    if (e < 0.0) throw ConfigError("bounds grid: eps must be >= 0");

  std::ostringstream out;
  out << "# " << provenance_comment(cfg) << "\n";
  out << "m,delta,eps,gap_pac_bayes,gap_pac_bayes_assumed,gap_hoeffding,gap_near_opt\n";
  for (int m : grid.m) {
    for (double d : grid.delta) {
      for (double e : grid.eps) {
        out << m << ',' << csv::format_double(d) << ',' << csv::format_double(e) << ','
            << csv::format_double(bounds::pac_bayes_gap(e, m, d)) << ','
            << csv::format_double(bounds::pac_bayes_gap_assumed(e, m, d)) << ','
            << csv::format_double(bounds::hoeffding_gap(m, d)) << ','
            << csv::format_double(bounds::near_optimality_gap(e, m, d)) << '\n';
      }
    }
  }
  csv::write_file(bounds_csv, out.str());

  if (grid.run_coverage) {
    bounds::CoverageReport report = bounds::empirical_coverage_check(
        bounds::shipped_coverage_toy(), grid.coverage_trials, grid.coverage_m,
        grid.coverage_delta, rng::derive(cfg.master_seed, "coverage"), cfg.threads);
    std::ostringstream cov;
    cov << "# " << provenance_comment(cfg) << "\n";
    cov << "trials,violations,violation_fraction,delta,gap,margin,pass\n";
    cov << report.trials << ',' << report.violations << ','
        << csv::format_double(report.violation_fraction) << ','
        << csv::format_double(report.delta) << ',' << csv::format_double(report.gap) << ','
        << csv::format_double(report.margin) << ',' << (report.pass ? 1 : 0) << '\n';
    csv::write_file(coverage_csv, cov.str());
  }
}

std::vector<std::string> cmd_plot(const std::vector<std::string>& curve_csvs,
                                  const std::string& out_dir) {
  std::vector<std::string> written;
  for (const std::string& path : curve_csvs) {
    gdice::LearningCurve curve = csv::read_curve(path);
    fs::path in(path);
    fs::path out = out_dir.empty() ? in : fs::path(out_dir) / in.filename();
    out.replace_extension(".svg");
    if (!out_dir.empty()) {
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
    }
    csv::write_file(out.string(), svg::render_curve(curve, in.stem().string()));
    written.push_back(out.string());
  }
  return written;
}

void run_full_pipeline(const ExperimentConfig& cfg) {
  cmd_train_stratagems(cfg);
  cmd_fuse(cfg, false);
  cmd_fuse(cfg, true);
  cmd_cross_eval(cfg);
  cmd_eval_unseen(cfg);
}

}  // namespace stratfuse::harness
