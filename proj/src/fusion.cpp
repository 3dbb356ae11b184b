#include "stratfuse/fusion.hpp"

#include <cmath>

#include "stratfuse/errors.hpp"

namespace stratfuse::fusion {

void AgentSwitchMatrix::validate() const {
  if (r < 1 || p.size() != static_cast<std::size_t>(r) * static_cast<std::size_t>(r))
    throw ConfigError("AgentSwitchMatrix: dimension mismatch");
  for (int s = 0; s < r; ++s) {
    double sum = 0.0;
    for (double v : row(s)) {
      if (v < 0.0 || !std::isfinite(v)) throw ConfigError("AgentSwitchMatrix: bad entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ConfigError("AgentSwitchMatrix: row does not sum to 1");
  }
}

AgentSwitchMatrix AgentSwitchMatrix::identity(int r) {
  AgentSwitchMatrix m;
  m.r = r;
  m.p.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r), 0.0);
  for (int s = 0; s < r; ++s) m.p[static_cast<std::size_t>(s) * static_cast<std::size_t>(r) + static_cast<std::size_t>(s)] = 1.0;
  return m;
}

AgentSwitchMatrix AgentSwitchMatrix::uniform(int r) {
  AgentSwitchMatrix m;
  m.r = r;
  m.p.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r),
             1.0 / static_cast<double>(r));
  return m;
}

void SwitchWeightPrior::validate() const {
  if (concentration <= 0.0) throw ConfigError("SwitchWeightPrior: concentration must be > 0");
  if (candidate_count < 1) throw ConfigError("SwitchWeightPrior: candidate_count must be >= 1");
}

AdversarySwitchWeights sample_switch_weights(const SwitchWeightPrior& prior, int agents,
                                             int r, rng::Stream& stream) {
  prior.validate();
  if (agents < 1 || r < 1) throw ConfigError("sample_switch_weights: bad dimensions");
  AdversarySwitchWeights u;
  u.reserve(static_cast<std::size_t>(agents));
  for (int a = 0; a < agents; ++a) {
    AgentSwitchMatrix m;
    m.r = r;
    m.p.resize(static_cast<std::size_t>(r) * static_cast<std::size_t>(r));
    for (int s = 0; s < r; ++s) {
      std::span<double> row{m.p.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(r),
                            static_cast<std::size_t>(r)};
      stream.dirichlet_symmetric(prior.concentration, row);
    }
    u.push_back(std::move(m));
  }
  return u;
}

int adversary_switch_step(const AgentSwitchMatrix& u, int current, rng::Stream& stream) {
  if (current < 0 || current >= u.r)
    throw UsageError("adversary_switch_step: tactic index out of range");
  return static_cast<int>(stream.categorical(u.row(current)));
}

namespace {

class SwitchingTacticPolicy : public ctf::AgentPolicy {
 public:
  SwitchingTacticPolicy(std::vector<ctf::TacticId> tactics, const AgentSwitchMatrix& u,
                        int initial)
      : tactics_(std::move(tactics)), u_(&u), initial_(initial), current_(initial) {}

  void begin(rng::Stream&) override { current_ = initial_; }

  int choose(const ctf::AgentContext& ctx, rng::Stream&) override {
    ctf::TacticView view;
    view.slot = ctx.slot;
    view.team = ctx.team;
    view.pos = ctx.pos;
    view.obs = ctx.obs;
    view.tag_eligible = (*ctx.eligible)[static_cast<std::size_t>(ctx.macros->tag())] != 0;
    return scripted_tactic_step(*ctx.cfg, *ctx.macros,
                                tactics_[static_cast<std::size_t>(current_)], view, state_);
  }

  void macro_done(const ctf::AgentContext&, rng::Stream& stream) override {
    current_ = adversary_switch_step(*u_, current_, stream);
  }

 private:
  std::vector<ctf::TacticId> tactics_;
  const AgentSwitchMatrix* u_;
  int initial_;
  int current_;
  ctf::TacticState state_;
};

}  // namespace

SwitchingTacticTeam::SwitchingTacticTeam(const ctf::SimConfig& cfg, const ctf::MacroSet& set,
                                         std::vector<ctf::TeamTactic> roster,
                                         AdversarySwitchWeights u, int initial_tactic)
    : cfg_(&cfg), set_(&set), u_(std::move(u)), initial_(initial_tactic) {
  if (roster.empty()) throw ConfigError("SwitchingTacticTeam: empty roster");
  const std::size_t slots = roster.front().size();
  for (const auto& row : roster)
    if (row.size() != slots) throw ConfigError("SwitchingTacticTeam: ragged roster");
  if (u_.size() != slots)
    throw ConfigError("SwitchingTacticTeam: one switch matrix per slot required");
  for (const auto& m : u_) {
    m.validate();
    if (m.r != static_cast<int>(roster.size()))
      throw ConfigError("SwitchingTacticTeam: matrix order must match roster size");
  }
  if (initial_ < 0 || initial_ >= static_cast<int>(roster.size()))
    throw ConfigError("SwitchingTacticTeam: initial tactic out of range");

  by_slot_.resize(slots);
  for (std::size_t slot = 0; slot < slots; ++slot)
    for (const auto& row : roster) by_slot_[slot].push_back(row[slot]);
}

std::unique_ptr<ctf::AgentPolicy> SwitchingTacticTeam::make_agent(int slot) const {
  if (slot < 0 || slot >= static_cast<int>(by_slot_.size()))
    throw ConfigError("SwitchingTacticTeam: no tactics for slot " + std::to_string(slot));
  return std::make_unique<SwitchingTacticPolicy>(by_slot_[static_cast<std::size_t>(slot)],
                                                 u_[static_cast<std::size_t>(slot)], initial_);
}

double surrogate_objective(const ctf::SimConfig& cfg, const ctf::MacroSet& set,
                           const ctf::TeamSpec& team,
                           const std::vector<ctf::TeamTactic>& roster,
                           std::span<const AdversarySwitchWeights> candidates,
                           int initial_tactic, int episodes, std::uint64_t seed,
                           int threads) {
  if (candidates.empty()) throw ConfigError("surrogate_objective: need at least one candidate");
  double sum = 0.0;
  for (const AdversarySwitchWeights& u : candidates) {
    SwitchingTacticTeam adversary(cfg, set, roster, u, initial_tactic);
    sum += threads == 1
               ? ctf::evaluate_blackbox_serial(cfg, set, team, adversary, episodes, seed)
                     .mean_return
               : ctf::evaluate_blackbox(cfg, set, team, adversary, episodes, seed, threads)
                     .mean_return;
  }
  return sum / static_cast<double>(candidates.size());
}

void FusionProblem::validate() const {
  sim.validate();
  if (stratagems.empty() || stratagems.front().empty())
    throw ConfigError("FusionProblem: no stratagems");
  if (roster.size() != stratagems.size())
    throw ConfigError("FusionProblem: roster size must equal stratagem count");
  const int agents = static_cast<int>(stratagems.front().size());
  if (agents != sim.blue_team_size)
    throw ConfigError("FusionProblem: one controller per blue agent required");
  for (const auto& row : roster)
    if (static_cast<int>(row.size()) != sim.red_team_size)
      throw ConfigError("FusionProblem: roster rows must match red team size");
  prior.validate();
}

namespace {

FusionResult run_fusion(const FusionProblem& problem, bool parallel) {
  problem.validate();
  const int r = static_cast<int>(problem.stratagems.size());
  const int agents = static_cast<int>(problem.stratagems.front().size());
  const int k = problem.stratagems.front().front().nodes;

  std::vector<AdversarySwitchWeights> candidates = problem.candidates;
  if (candidates.empty()) {
    rng::Stream stream(rng::derive(problem.prior.seed, "u-candidates"));
    for (int i = 0; i < problem.prior.candidate_count; ++i)
      candidates.push_back(
          sample_switch_weights(problem.prior, problem.sim.red_team_size, r, stream));
  }

  ctf::MacroSet set(problem.sim);
  gdice::RowWidths widths = fsc::switching_widths(agents, r, k);

  gdice::Blackbox blackbox = [&](const gdice::CandidateWeights& w, std::uint64_t eval_seed) {
    fsc::UnifiedTeam team(fsc::decode_unified(problem.stratagems, w));
    return surrogate_objective(problem.sim, set, team, problem.roster, candidates,
                               problem.adversary_initial_tactic,
                               problem.search.episodes_per_evaluation, eval_seed,
                               /*threads=*/1);
  };

  gdice::OptimizeResult search = parallel
                                     ? gdice::optimize(problem.search, widths, blackbox)
                                     : gdice::optimize_serial(problem.search, widths, blackbox);

  FusionResult result;
  result.team = fsc::decode_unified(problem.stratagems, search.best);
  result.search = std::move(search);
  result.candidates_used = std::move(candidates);
  return result;
}

}  // namespace

FusionResult optimize_switching(const FusionProblem& problem) {
  return run_fusion(problem, true);
}

FusionResult optimize_switching_serial(const FusionProblem& problem) {
  return run_fusion(problem, false);
}

}  // namespace stratfuse::fusion
