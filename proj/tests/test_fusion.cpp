#include <doctest.h>

#include <cmath>

#include "stratfuse/errors.hpp"
#include "stratfuse/fusion.hpp"
#include "test_teams.hpp"

using namespace stratfuse;
using namespace stratfuse::fusion;

TEST_CASE("switch weight draws are seeded simplex rows with Dirichlet means") {
  SwitchWeightPrior prior;
  prior.concentration = 1.0;
  rng::Stream s1(3), s2(3);
  AdversarySwitchWeights a = sample_switch_weights(prior, 3, 4, s1);
  AdversarySwitchWeights b = sample_switch_weights(prior, 3, 4, s2);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].p == b[i].p);
  for (const auto& m : a) m.validate();

  // Mean of each entry approaches 1/r.
  rng::Stream s(5);
  double mean = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    AdversarySwitchWeights u = sample_switch_weights(prior, 1, 4, s);
    mean += u[0].p[0];
  }
  CHECK(std::abs(mean / draws - 0.25) < 0.02);

  // Enormous concentration pins every row near uniform.
  prior.concentration = 1e6;
  AdversarySwitchWeights sharp = sample_switch_weights(prior, 1, 4, s);
  for (double v : sharp[0].p) CHECK(std::abs(v - 0.25) < 0.01);
}

TEST_CASE("adversary_switch_step follows the row distribution") {
  rng::Stream s(9);
  AgentSwitchMatrix id = AgentSwitchMatrix::identity(4);
  for (int i = 0; i < 50; ++i) CHECK(adversary_switch_step(id, 2, s) == 2);

  AgentSwitchMatrix jump;
  jump.r = 4;
  jump.p = {0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0};
  for (int i = 0; i < 50; ++i) CHECK(adversary_switch_step(jump, 1, s) == 1);

  AgentSwitchMatrix uniform = AgentSwitchMatrix::uniform(4);
  std::array<int, 4> counts{};
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) counts[static_cast<std::size_t>(adversary_switch_step(uniform, 0, s))]++;
  for (int c : counts) CHECK(std::abs(c / static_cast<double>(trials) - 0.25) < 0.01);

  CHECK_THROWS_AS(adversary_switch_step(id, 7, s), UsageError);
}

TEST_CASE("surrogate objective averages with common random numbers") {
  ctf::SimConfig cfg = ctf::default_config();
  cfg.horizon = 30;
  ctf::MacroSet set(cfg);
  testutil::ParkTeam team({0, 2, 4});
  auto roster = ctf::default_roster();

  AdversarySwitchWeights u_id(3, AgentSwitchMatrix::identity(4));
  std::vector<AdversarySwitchWeights> one = {u_id};
  std::vector<AdversarySwitchWeights> three = {u_id, u_id, u_id};

  double v1 = surrogate_objective(cfg, set, team, roster, one, 0, 5, 99);
  double v3 = surrogate_objective(cfg, set, team, roster, three, 0, 5, 99);
  CHECK(v1 == v3);  // identical candidates + common seeds collapse to m = 1

  // Mixed candidates average their per-candidate means exactly.
  AdversarySwitchWeights u_uni(3, AgentSwitchMatrix::uniform(4));
  std::vector<AdversarySwitchWeights> mixed = {u_id, u_uni};
  double vu = surrogate_objective(cfg, set, team, roster, {&u_uni, 1}, 0, 5, 99);
  double vm = surrogate_objective(cfg, set, team, roster, mixed, 0, 5, 99);
  CHECK(vm == doctest::Approx(0.5 * (v1 + vu)).epsilon(1e-12));
}

TEST_CASE("surrogate linearity: union equals size-weighted average") {
  ctf::SimConfig cfg = ctf::default_config();
  cfg.horizon = 25;
  ctf::MacroSet set(cfg);
  testutil::ParkTeam team({0, 2, 4});
  auto roster = ctf::default_roster();

  rng::Stream s(17);
  SwitchWeightPrior prior;
  std::vector<AdversarySwitchWeights> set_a, set_b, both;
  for (int i = 0; i < 3; ++i) set_a.push_back(sample_switch_weights(prior, 3, 4, s));
  for (int i = 0; i < 2; ++i) set_b.push_back(sample_switch_weights(prior, 3, 4, s));
  both = set_a;
  both.insert(both.end(), set_b.begin(), set_b.end());

  double va = surrogate_objective(cfg, set, team, roster, set_a, 0, 4, 7);
  double vb = surrogate_objective(cfg, set, team, roster, set_b, 0, 4, 7);
  double vu = surrogate_objective(cfg, set, team, roster, both, 0, 4, 7);
  CHECK(vu == doctest::Approx((3.0 * va + 2.0 * vb) / 5.0).epsilon(1e-12));
}

TEST_CASE("zero-gate unified controllers replay their sub-controller exactly") {
  ctf::SimConfig cfg = ctf::default_config();
  cfg.horizon = 60;
  ctf::MacroSet set(cfg);

  rng::Stream init(21);
  std::vector<std::vector<fsc::Controller>> stratagems(2);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 3; ++a) {
      fsc::Controller c = fsc::uniform_controller(2, set.size());
      // Random-ish but valid rows.
      for (int q = 0; q < c.nodes; ++q) {
        auto row = c.lambda_row(q);
        double sum = 0.0;
        for (double& p : row) {
          p = 0.05 + init.next_double();
          sum += p;
        }
        for (double& p : row) p /= sum;
      }
      stratagems[static_cast<std::size_t>(s)].push_back(std::move(c));
    }

  std::vector<fsc::UnifiedController> unified;
  for (int a = 0; a < 3; ++a) {
    std::vector<fsc::Controller> subs = {stratagems[0][static_cast<std::size_t>(a)],
                                         stratagems[1][static_cast<std::size_t>(a)]};
    unified.push_back(fsc::build_unified(subs, 0.0));
  }
  fsc::UnifiedTeam unified_team(unified);
  fsc::ControllerTeam plain_team(stratagems[0]);
  ctf::TacticTeam red(cfg, set, ctf::default_roster()[0]);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ctf::EpisodeResult a = ctf::run_episode(cfg, set, unified_team, red, seed, true);
    ctf::EpisodeResult b = ctf::run_episode(cfg, set, plain_team, red, seed, true);
    CHECK(a.blue_return == b.blue_return);
    REQUIRE(a.trace->choices.size() == b.trace->choices.size());
    for (std::size_t i = 0; i < a.trace->choices.size(); ++i) {
      CHECK(a.trace->choices[i].macro == b.trace->choices[i].macro);
      CHECK(a.trace->choices[i].step == b.trace->choices[i].step);
    }
  }
}

TEST_CASE("an entry gate redirects the opening stratagem") {
  ctf::SimConfig cfg = ctf::default_config();
  cfg.horizon = 50;
  ctf::MacroSet set(cfg);

  // Two deterministic one-hot stratagem teams with distinct openings.
  auto make_team = [&](int vantage) {
    std::vector<fsc::Controller> team;
    for (int a = 0; a < 3; ++a) {
      fsc::Controller c = fsc::uniform_controller(2, set.size());
      for (int q = 0; q < c.nodes; ++q) {
        auto row = c.lambda_row(q);
        for (double& p : row) p = 0.0;
        row[static_cast<std::size_t>(set.move_own(vantage + q))] = 1.0;
      }
      for (int q = 0; q < c.nodes; ++q)
        for (int o = 0; o < ctf::kObservationCount; ++o) {
          auto row = c.delta_row(q, o);
          for (double& p : row) p = 0.0;
          row[static_cast<std::size_t>(q)] = 1.0;  // stay on the same node
        }
      team.push_back(std::move(c));
    }
    return team;
  };
  std::vector<std::vector<fsc::Controller>> stratagems = {make_team(0), make_team(5)};

  std::vector<fsc::UnifiedController> unified;
  for (int a = 0; a < 3; ++a) {
    std::vector<fsc::Controller> subs = {stratagems[0][static_cast<std::size_t>(a)],
                                         stratagems[1][static_cast<std::size_t>(a)]};
    fsc::UnifiedController u = fsc::build_unified(subs, 0.0);
    u.gate[0] = 1.0;  // entry node always jumps...
    auto edge = u.edge_row(0);
    for (double& p : edge) p = 0.0;
    edge[0] = 1.0;  // ...into sub-controller 1, node 0
    unified.push_back(std::move(u));
  }
  fsc::UnifiedTeam switching(unified);
  fsc::ControllerTeam pure_second(stratagems[1]);
  ctf::TacticTeam red(cfg, set, ctf::default_roster()[0]);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ctf::EpisodeResult a = ctf::run_episode(cfg, set, switching, red, seed, true);
    ctf::EpisodeResult b = ctf::run_episode(cfg, set, pure_second, red, seed, true);
    CHECK(a.blue_return == b.blue_return);
    REQUIRE(a.trace->choices.size() == b.trace->choices.size());
    for (std::size_t i = 0; i < a.trace->choices.size(); ++i)
      CHECK(a.trace->choices[i].macro == b.trace->choices[i].macro);
  }
}

TEST_CASE("optimize_switching freezes the stratagem tables") {
  ctf::SimConfig cfg = ctf::default_config();
  cfg.horizon = 20;
  ctf::MacroSet set(cfg);

  FusionProblem problem;
  problem.sim = cfg;
  problem.stratagems.assign(
      2, std::vector<fsc::Controller>(3, fsc::uniform_controller(1, set.size())));
  problem.roster = {ctf::default_roster()[0], ctf::default_roster()[1]};
  problem.search.iterations = 2;
  problem.search.samples_per_iteration = 6;
  problem.search.elite_count = 2;
  problem.search.episodes_per_evaluation = 2;
  problem.search.seed = 4;
  problem.prior.candidate_count = 2;

  std::vector<std::vector<fsc::Controller>> before = problem.stratagems;
  FusionResult result = optimize_switching_serial(problem);
  CHECK(problem.stratagems == before);
  REQUIRE(result.team.size() == 3);
  for (const auto& u : result.team) {
    CHECK(u.r() == 2);
    for (int s = 0; s < 2; ++s)
      CHECK(u.subs[static_cast<std::size_t>(s)] == before[static_cast<std::size_t>(s)][0]);
    // Deterministic candidate: gates in {0,1}, one-hot edges.
    for (double g : u.gate) CHECK((g == 0.0 || g == 1.0));
    for (int g = 0; g < u.global_nodes(); ++g) {
      double sum = 0.0;
      for (double p : u.edge_row(g)) sum += p;
      CHECK(sum == 1.0);
    }
    CHECK(result.candidates_used.size() == 2);
  }
}

TEST_CASE("switching team with identity weights replays the stationary tactic") {
  ctf::SimConfig cfg = ctf::default_config();
  cfg.horizon = 40;
  ctf::MacroSet set(cfg);
  testutil::ParkTeam blue({0, 2, 4});

  AdversarySwitchWeights u_id(3, AgentSwitchMatrix::identity(4));
  SwitchingTacticTeam switching(cfg, set, ctf::default_roster(), u_id, 0);
  ctf::TacticTeam stationary(cfg, set, ctf::default_roster()[0]);

  ctf::EpisodeResult a = ctf::run_episode(cfg, set, blue, switching, 5, true);
  ctf::EpisodeResult b = ctf::run_episode(cfg, set, blue, stationary, 5, true);
  CHECK(a.red_return == b.red_return);
  REQUIRE(a.trace->steps.size() == b.trace->steps.size());
  for (std::size_t i = 0; i < a.trace->steps.size(); ++i)
    CHECK(a.trace->steps[i].positions == b.trace->steps[i].positions);
}
