#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "jetflow/energy.hpp"
#include "jetflow/params.hpp"

using namespace jetflow;

TEST_CASE("canonical tuple: the two quoted rows pass, evaluation survives q = 10") {
  ParamSchedule ps(3600, 7, 1e-4, 1e-9, 0.4, 1.0, 5.0, 1.0, 4.5);
  auto rows = ps.check_admissible(10);
  REQUIRE(!rows.empty());
  bool found161 = false, foundai = false;
  for (const auto& r : rows) {
    CHECK(std::isfinite(r.log_margin));
    if (r.id == "161*alpha < 1/7") {
      found161 = true;
      CHECK(r.pass);
      // direct arithmetic oracle: log margins agree
      CHECK(r.log_margin == doctest::Approx(std::log(1.0 / 7.0) - std::log(161.0 * 1e-4)).epsilon(1e-12));
    }
    if (r.id == "alpha*iota > 4*beta*b^2") {
      foundai = true;
      CHECK(r.pass);
      CHECK(r.log_margin ==
            doctest::Approx(std::log(1e-4 * 0.4) - std::log(4.0 * 1e-9 * 49.0)).epsilon(1e-12));
    }
  }
  CHECK(found161);
  CHECK(foundai);
}

TEST_CASE("log-domain values match direct evaluation where floats do not overflow") {
  ParamSchedule ps(3600, 7, 1e-4, 1e-9, 0.4, 1.0, 5.0, 1.0, 4.5);
  CHECK(ps.log_lambda(0) == doctest::Approx(std::log(3600.0)).epsilon(1e-12));
  CHECK(ps.log_lambda(1) == doctest::Approx(7.0 * std::log(3600.0)).epsilon(1e-12));
  // delta_2 = (lambda_1/lambda_2)^{2 beta}
  const double direct = 2e-9 * (7.0 - 49.0) * std::log(3600.0);
  CHECK(ps.log_delta(2) == doctest::Approx(direct).epsilon(1e-12));
  // no overflow at q = 10: log lambda_10 = 7^10 log 3600
  CHECK(ps.log_lambda(10) == doctest::Approx(std::pow(7.0, 10.0) * std::log(3600.0)).epsilon(1e-10));
}

TEST_CASE("forced violation flips exactly the targeted row") {
  ParamSchedule good(3600, 7, 1e-4, 1e-9, 0.4, 1.0, 5.0, 1.0, 4.5);
  ParamSchedule bad(3600, 7, (1.0 / 161.0 / 7.0) * 1.01, 1e-9, 0.4, 1.0, 5.0, 1.0, 4.5);
  auto rg = good.check_admissible(2);
  auto rb = bad.check_admissible(2);
  REQUIRE(rg.size() == rb.size());
  for (std::size_t i = 0; i < rg.size(); ++i) {
    if (rg[i].id == "161*alpha < 1/7") {
      CHECK(rg[i].pass);
      CHECK(!rb[i].pass);
    }
    if (rg[i].id == "alpha*iota > 4*beta*b^2") {
      // raising alpha cannot break this one
      CHECK(rb[i].pass == rg[i].pass);
    }
  }
}

TEST_CASE("b not a multiple of 7 is rejected") {
  CHECK_THROWS_AS(ParamSchedule(3600, 6, 1e-4, 1e-9, 0.4, 1.0, 5.0, 1.0, 4.5), std::domain_error);
}

TEST_CASE("geometric series bound 1/(1 - a^{-beta b}) <= 2 iff a^{beta b} >= 2") {
  // beta b log a = log 2 exactly on the boundary; pick beta slightly above
  const double la = std::log(3600.0);
  const double beta_edge = std::log(2.0) / (7.0 * la);
  ParamSchedule ok(3600, 7, 1e-4, beta_edge * 1.01, 0.4, 1.0, 5.0, 1.0, 4.5);
  ParamSchedule notok(3600, 7, 1e-4, beta_edge * 0.99, 0.4, 1.0, 5.0, 1.0, 4.5);
  auto find = [](const std::vector<ConstraintRow>& rows, const std::string& id) {
    for (const auto& r : rows)
      if (r.id == id) return r.pass;
    return false;
  };
  CHECK(find(ok.check_admissible(0), "sum delta_r^(1/2) <= 2"));
  CHECK(!find(notok.check_admissible(0), "sum delta_r^(1/2) <= 2"));
}

TEST_CASE("(3.1b) lower bound evaluated in the log domain at q = 1") {
  ParamSchedule ps(3600, 7, 1e-4, 1e-9, 0.4, 1.0, 5.0, 1.0, 4.5);
  // log(1/ell) = 1.5 alpha log lambda_2 + 2 log lambda_1; compare m^2 e_bar
  const double la = std::log(3600.0);
  const double log_inv_ell = 1.5e-4 * 49.0 * la + 2.0 * 7.0 * la;
  const double lhs = std::log(std::exp(8.0) * 5.0);
  auto rows = ps.check_admissible(1);
  for (const auto& r : rows)
    if (r.id.find("[q=1] (3.1b) m^2*e_bar") != std::string::npos)
      CHECK(r.log_margin == doctest::Approx(log_inv_ell - lhs).epsilon(1e-9));
}

TEST_CASE("there is an all-pass tuple (huge log a regime) and the checker exits clean on it") {
  // alpha*b >= 10/iota - 4 with 161 alpha < 1/7 forces b of order 1e4, and
  // then a^{beta b} >= 2 against beta < alpha/(4 b^2) (needed twice) forces
  // log a of order 1e8 - the regime the log-domain evaluation exists for.
  const std::int64_t log10_a = 200000000; // a = 10^2e8
  const double la = log10_a * std::log(10.0);
  const double iota = 0.45;
  const double alpha = 8.6e-4;
  const std::int64_t b = 63000; // multiple of 7; alpha*b = 54.18 >= 10/iota - 4 = 18.2
  const double beta_lo = std::log(2.0) / (static_cast<double>(b) * la);
  const double beta_hi = alpha / (4.0 * static_cast<double>(b) * b) / 2.0; // also clears 2 beta b^2 < alpha/2
  REQUIRE(beta_lo < beta_hi);
  const double beta = 4e-14;
  REQUIRE(beta > beta_lo);
  REQUIRE(beta < beta_hi);
  ParamSchedule ps = ParamSchedule::pow10(log10_a, b, alpha, beta, iota, 1.0, 5.0, 1.0, 4.5);
  auto rows = ps.check_admissible(3);
  for (const auto& r : rows) {
    INFO(r.id, " margin=", r.log_margin);
    CHECK(r.pass);
  }
  CHECK(ps.all_pass(3));
}

TEST_CASE("surrogate schedule: 7th powers, decreasing delta, runnable ell") {
  SurrogateSchedule s = make_surrogate(2, 2, 3, 0.05, 0.05);
  CHECK(s.lambda[0] == doctest::Approx(128.0));
  CHECK(s.lambda[1] == doctest::Approx(16384.0));
  CHECK(s.lambda[2] == doctest::Approx(2097152.0));
  for (int q = 1; q < 3; ++q) CHECK(s.delta[q + 1] < s.delta[q]);
  for (int q = 0; q < 3; ++q) {
    CHECK(s.ell(q) > 0.0);
    CHECK(s.ell(q) < 1.0);
  }
  CHECK_THROWS_AS(make_surrogate(1, 2, 3, 0.1, 0.05), std::domain_error);
}

TEST_CASE("energy profiles: bounds validated, tabulated interpolation is C^1-ish") {
  EnergyProfile e = EnergyProfile::constant(5.0, 5.5, 1.0, 4.5);
  e.validate(1.0);
  CHECK(e(0.3) == 5.0);
  CHECK(e.derivative(0.5) == 0.0);

  EnergyProfile bad = EnergyProfile::constant(4.2, 5.5, 1.0, 4.5);
  CHECK_THROWS_AS(bad.validate(1.0), std::domain_error);

  std::vector<double> t = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> v = {5.0, 5.2, 5.4, 5.3, 5.1};
  EnergyProfile tab = EnergyProfile::tabulated(t, v, 5.5, 2.0, 4.5);
  tab.validate(1.0);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(tab(t[i]) == doctest::Approx(v[i]).epsilon(1e-12));
  // derivative consistent with finite differences
  const double h = 1e-6;
  const double fd = (tab(0.4 + h) - tab(0.4 - h)) / (2 * h);
  CHECK(tab.derivative(0.4) == doctest::Approx(fd).epsilon(1e-6));
  // constant extension for t < 0
  CHECK(tab(-3.0) == doctest::Approx(5.0));
  CHECK(tab.derivative(-3.0) == 0.0);

  EnergyProfile e2 = EnergyProfile::constant(5.0, 5.5, 1.0, 4.5);
  CHECK(e.same_values(e2, 0.0, 1.0));
  EnergyProfile e3 = EnergyProfile::affine(5.0, 0.2, 1.0, 5.5, 1.0, 4.5);
  CHECK(!e.same_values(e3, 0.0, 1.0));
  CHECK(e.same_values(e3, -1.0, 0.0)); // both frozen at 5.0 for t <= 0
}
