// Compares the OpenMP evaluation kernels against their serial reference
// implementations: same seeds, bit-identical results, wall-clock speedup.

#include <chrono>
#include <cstring>
#include <iostream>

#include "stratfuse/encoding.hpp"
#include "stratfuse/evaluate.hpp"
#include "stratfuse/experiment.hpp"
#include "stratfuse/gdice.hpp"
#include "stratfuse/policies.hpp"

using namespace stratfuse;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool identical(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  const int episodes = quick ? 200 : 2000;
  const int gdice_iters = quick ? 4 : 20;

  ctf::SimConfig cfg = ctf::default_config();
  ctf::MacroSet set(cfg);
  ctf::TacticTeam adversary(cfg, set, ctf::default_roster()[0]);

  // A mid-training candidate: uniform stochastic controllers.
  std::vector<fsc::Controller> team_controllers(
      static_cast<std::size_t>(cfg.blue_team_size), fsc::uniform_controller(3, set.size()));
  fsc::ControllerTeam team(team_controllers);

  std::cout << "episode evaluation: " << episodes << " episodes\n";
  auto t0 = std::chrono::steady_clock::now();
  ctf::EvalReport serial = ctf::evaluate_blackbox_serial(cfg, set, team, adversary, episodes, 7);
  double t_serial = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  ctf::EvalReport parallel = ctf::evaluate_blackbox(cfg, set, team, adversary, episodes, 7, 0);
  double t_parallel = seconds_since(t0);
  bool same = identical(serial.returns, parallel.returns);
  std::cout << "  serial   " << t_serial << " s\n";
  std::cout << "  openmp   " << t_parallel << " s  (speedup " << t_serial / t_parallel << "x)\n";
  std::cout << "  results  " << (same ? "identical" : "DIFFER") << "\n";
  if (!same) return 1;

  const int agents = cfg.blue_team_size;
  const int actions = set.size();
  gdice::RowWidths widths = fsc::controller_widths(agents, 2, actions);
  gdice::Blackbox blackbox = [&](const gdice::CandidateWeights& w, std::uint64_t eval_seed) {
    fsc::ControllerTeam cand(fsc::decode_controllers(agents, 2, actions, w));
    return ctf::evaluate_blackbox_serial(cfg, set, cand, adversary, 4, eval_seed).mean_return;
  };
  gdice::GDiceConfig opt;
  opt.iterations = gdice_iters;
  opt.samples_per_iteration = 24;
  opt.elite_count = 4;
  opt.seed = 11;

  std::cout << "optimizer iteration sweep: " << gdice_iters << " iterations\n";
  t0 = std::chrono::steady_clock::now();
  gdice::OptimizeResult rs = gdice::optimize_serial(opt, widths, blackbox);
  double o_serial = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  gdice::OptimizeResult rp = gdice::optimize(opt, widths, blackbox);
  double o_parallel = seconds_since(t0);
  bool same_best = rs.best == rp.best && rs.best_value == rp.best_value;
  std::cout << "  serial   " << o_serial << " s\n";
  std::cout << "  openmp   " << o_parallel << " s  (speedup " << o_serial / o_parallel << "x)\n";
  std::cout << "  results  " << (same_best ? "identical" : "DIFFER") << "\n";
  return same_best ? 0 : 1;
}
