#include <doctest.h>

#include <cmath>
#include <limits>

#include "bounds_oracle.hpp"
#include "stratfuse/bounds.hpp"
#include "stratfuse/coverage.hpp"
#include "stratfuse/errors.hpp"

using namespace stratfuse;
using namespace stratfuse::bounds;

TEST_CASE("kl_categorical: zero, finite, infinite") {
  std::vector<std::vector<double>> q = {{0.5, 0.5}};
  std::vector<std::vector<double>> p = {{0.5, 0.5}};
  CHECK(kl_categorical(q, p) == 0.0);

  p = {{0.25, 0.75}};
  CHECK(kl_categorical(q, p) == doctest::Approx(0.143841).epsilon(1e-5));

  q = {{1.0, 0.0}};
  p = {{0.0, 1.0}};
  CHECK(std::isinf(kl_categorical(q, p)));

  // Product rule: independent rows add up.
  std::vector<std::vector<double>> q2 = {{0.5, 0.5}, {0.5, 0.5}};
  std::vector<std::vector<double>> p2 = {{0.25, 0.75}, {0.25, 0.75}};
  CHECK(kl_categorical(q2, p2) ==
        doctest::Approx(2.0 * kl_categorical({q2.begin(), 1}, {p2.begin(), 1})));
}

TEST_CASE("gap formulas match their frozen oracle values") {
  CHECK(oracle::within_rel(pac_bayes_gap(0.0, 2, 0.25), oracle::gap_pac_bayes(0.0, 2, 0.25),
                           1e-12));
  CHECK(pac_bayes_gap(0.0, 2, 0.25) == doctest::Approx(1.074825).epsilon(1e-5));
  CHECK(pac_bayes_gap(0.0, 1, 0.5) == doctest::Approx(1.442027).epsilon(1e-5));
  CHECK(pac_bayes_gap_assumed(1.0, 8, 0.5) == doctest::Approx(0.624608).epsilon(1e-5));
  CHECK(hoeffding_gap(8, 0.1) == doctest::Approx(0.379357).epsilon(1e-5));
  CHECK(near_optimality_gap(0.0, 16, 0.5) == doctest::Approx(0.897187).epsilon(1e-5));

  // Vanishing gap for enormous candidate counts.
  CHECK(near_optimality_gap(0.0, 1000000, 0.5) < 0.01);
  // delta -> 1 sends the Hoeffding gap to zero.
  CHECK(hoeffding_gap(8, 0.999999999999) == doctest::Approx(0.0).epsilon(1e-5));
  // Quadrupling m halves the Hoeffding gap.
  CHECK(hoeffding_gap(32, 0.1) == doctest::Approx(0.5 * hoeffding_gap(8, 0.1)).epsilon(1e-12));
}

TEST_CASE("algebraic identities between the gap formulas") {
  // The assumed-gap with eps = 0 equals the PAC-Bayes gap at delta/2.
  for (int m : {1, 2, 8, 64}) {
    for (double d : {0.5, 0.1, 0.02}) {
      CHECK(pac_bayes_gap_assumed(0.0, m, d) ==
            doctest::Approx(pac_bayes_gap(0.0, m, d / 2)).epsilon(1e-12));
      // The near-optimality gap is twice the assumed gap at delta/2.
      for (double e : {0.0, 0.7}) {
        CHECK(near_optimality_gap(e, m, d) ==
              doctest::Approx(2.0 * pac_bayes_gap_assumed(e, m, d / 2)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gap monotonicity sweeps") {
  for (double d : {0.5, 0.1, 0.01}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int m : {1, 2, 4, 8, 16, 64, 200}) {
      double g = pac_bayes_gap(0.0, m, d);
      CHECK(g >= 0.0);
      CHECK(g < prev);
      prev = g;
      CHECK(hoeffding_gap(m, d / 2) > hoeffding_gap(m, d));  // smaller delta, larger gap
      CHECK(pac_bayes_gap_assumed(1.0, m, d) >= pac_bayes_gap_assumed(0.0, m, d));
      CHECK(near_optimality_gap(1.0, m, d) >= near_optimality_gap(0.0, m, d));
    }
  }
}

TEST_CASE("bad bound inputs are rejected") {
  CHECK_THROWS_AS(pac_bayes_gap(0.0, 0, 0.5), ConfigError);
  CHECK_THROWS_AS(hoeffding_gap(4, 0.0), ConfigError);
  CHECK_THROWS_AS(hoeffding_gap(4, 1.0), ConfigError);
  CHECK_THROWS_AS(near_optimality_gap(-1.0, 4, 0.5), ConfigError);
}

TEST_CASE("h_dimension counts inter-controller transitions") {
  CHECK(h_dimension(3, 4, 5) == 900);
  CHECK(h_dimension(2, 2, 1) == 4);
  for (int k = 1; k < 5; ++k) CHECK(h_dimension(1, 1, k) == 0);
  CHECK_THROWS_AS(h_dimension(0, 1, 1), ConfigError);
}

TEST_CASE("rescale_returns maps the documented range onto [0,1]") {
  std::vector<double> raw = {-1100.0, 0.0, 500.0};
  RescaledReturns rs = rescale_returns(raw, -1100.0, 500.0);
  CHECK(rs.values[0] == 0.0);
  CHECK(rs.values[2] == 1.0);
  CHECK(rs.values[1] == doctest::Approx(1100.0 / 1600.0));

  // Affine invariance: the argmax candidate is unchanged.
  std::vector<double> more = {12.0, 400.0, -3.0};
  RescaledReturns rm = rescale_returns(more, -1100.0, 500.0);
  CHECK(std::distance(rm.values.begin(),
                      std::max_element(rm.values.begin(), rm.values.end())) == 1);

  CHECK_THROWS_AS(rescale_returns(std::vector<double>{600.0}, -1100.0, 500.0), ConfigError);
  CHECK_THROWS_AS(rescale_returns(raw, 500.0, -1100.0), ConfigError);
}

TEST_CASE("ctf return bounds cover the hand-traceable extremes") {
  ctf::SimConfig cfg = ctf::default_config();
  ReturnBounds b = ctf_return_bounds(cfg);
  // The no-tag worst case (lost capture plus all step penalties) and best
  // case (instant capture) sit strictly inside the documented range.
  CHECK(b.r_min <= -(cfg.capture_reward + 3.0 * cfg.horizon));
  CHECK(b.r_max >= cfg.capture_reward);
  CHECK(b.r_min < b.r_max);
}

TEST_CASE("coverage check honours the confidence level on the shipped toy") {
  CoverageToySpec toy = shipped_coverage_toy();
  toy.validate();
  CHECK(toy.reward.size() == 2);
  CHECK(toy.u_prob.size() == 4);
  // Exhaustive-enumeration oracle for the true values.
  CHECK(toy.true_value(0) == doctest::Approx(0.5));
  CHECK(toy.true_value(1) == doctest::Approx(0.4875));
  CHECK(toy.best_true_value() == doctest::Approx(0.5));

  CoverageReport r = empirical_coverage_check(toy, 1000, 4, 0.1, 42);
  CHECK(r.trials == 1000);
  CHECK(r.pass);
  CHECK(r.violation_fraction <= 0.1 + r.margin);

  // Near-vacuous confidence: the gap collapses and violations appear, but
  // stay within the margin-adjusted budget.
  CoverageReport loose = empirical_coverage_check(toy, 2000, 4, 0.999, 43);
  CHECK(loose.gap < 0.02);
  CHECK(loose.violation_fraction <= 0.999 + loose.margin);

  // Constant rewards can never violate: the whole gap is slack.
  CoverageToySpec flat;
  flat.reward = {{0.5, 0.5}, {0.5, 0.5}};
  flat.u_prob = {0.5, 0.5};
  CoverageReport none = empirical_coverage_check(flat, 500, 4, 0.05, 7);
  CHECK(none.violations == 0);
}
