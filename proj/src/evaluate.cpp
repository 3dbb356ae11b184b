#include "stratfuse/evaluate.hpp"

#include <cmath>
#include <string>

#include "stratfuse/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stratfuse::ctf {

namespace {

EvalReport summarize(std::vector<double> returns) {
  EvalReport report;
  report.episodes = static_cast<int>(returns.size());
  double sum = 0.0;
  for (double r : returns) sum += r;
  report.mean_return = sum / static_cast<double>(returns.size());
  if (returns.size() > 1) {
    double ss = 0.0;
    for (double r : returns) {
      double d = r - report.mean_return;
      ss += d * d;
    }
    double var = ss / static_cast<double>(returns.size() - 1);
    report.std_error = std::sqrt(var / static_cast<double>(returns.size()));
  }
  report.returns = std::move(returns);
  return report;
}

}  // namespace

EvalReport evaluate_blackbox_serial(const SimConfig& cfg, const MacroSet& set,
                                    const TeamSpec& team, const TeamSpec& adversary,
                                    int episodes, std::uint64_t seed) {
  if (episodes < 1) throw ConfigError("evaluate_blackbox: episodes must be >= 1");
  std::vector<double> returns(static_cast<std::size_t>(episodes));
  for (int i = 0; i < episodes; ++i) {
    std::uint64_t ep_seed = rng::derive(seed, "episode", static_cast<std::uint64_t>(i));
    returns[static_cast<std::size_t>(i)] =
        run_episode(cfg, set, team, adversary, ep_seed).blue_return;
  }
  return summarize(std::move(returns));
}

EvalReport evaluate_blackbox(const SimConfig& cfg, const MacroSet& set,
                             const TeamSpec& team, const TeamSpec& adversary,
                             int episodes, std::uint64_t seed, int threads) {
  if (episodes < 1) throw ConfigError("evaluate_blackbox: episodes must be >= 1");
  std::vector<double> returns(static_cast<std::size_t>(episodes));
  std::string error;

#ifdef _OPENMP
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (int i = 0; i < episodes; ++i) {
    try {
      std::uint64_t ep_seed = rng::derive(seed, "episode", static_cast<std::uint64_t>(i));
      returns[static_cast<std::size_t>(i)] =
          run_episode(cfg, set, team, adversary, ep_seed).blue_return;
    } catch (const std::exception& e) {
#pragma omp critical
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) throw Error(error);
#else
  (void)threads;
  return evaluate_blackbox_serial(cfg, set, team, adversary, episodes, seed);
#endif
  return summarize(std::move(returns));
}

namespace {

class TacticPolicy : public AgentPolicy {
 public:
  TacticPolicy(TacticId tactic) : tactic_(tactic) {}

  int choose(const AgentContext& ctx, rng::Stream&) override {
    TacticView view;
    view.slot = ctx.slot;
    view.team = ctx.team;
    view.pos = ctx.pos;
    view.obs = ctx.obs;
    view.tag_eligible = (*ctx.eligible)[static_cast<std::size_t>(ctx.macros->tag())] != 0;
    return scripted_tactic_step(*ctx.cfg, *ctx.macros, tactic_, view, state_);
  }

 private:
  TacticId tactic_;
  TacticState state_;
};

}  // namespace

TacticTeam::TacticTeam(const SimConfig& cfg, const MacroSet& set, TeamTactic tactics)
    : cfg_(&cfg), set_(&set), tactics_(std::move(tactics)) {}

std::unique_ptr<AgentPolicy> TacticTeam::make_agent(int slot) const {
  if (slot < 0 || slot >= static_cast<int>(tactics_.size()))
    throw ConfigError("TacticTeam: team tactic has no entry for slot " + std::to_string(slot));
  return std::make_unique<TacticPolicy>(tactics_[static_cast<std::size_t>(slot)]);
}

}  // namespace stratfuse::ctf
