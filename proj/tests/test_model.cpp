#include <doctest.h>

#include <cmath>

#include "careers/model.hpp"
#include "careers/policy.hpp"

using namespace careers;

namespace {

// Continuation values that are constant in theta.
class Flat final : public ContinuationValues {
 public:
  Flat(double up, double down, double stay) : up_(up), down_(down), stay_(stay) {}
  double after_success(double) const override { return up_; }
  double after_failure(double) const override { return down_; }
  double after_employment(double) const override { return stay_; }

 private:
  double up_, down_, stay_;
};

const TerminalContinuation kTerminal;

}  // namespace

TEST_CASE("CRRA and tabulated utility") {
  const auto sqrt_u = Preferences::crra(0.5);
  CHECK(sqrt_u(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Preferences::crra(1.0)(0.37) == 0.37);
  CHECK(sqrt_u(0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(sqrt_u(0.0) == 0.0);
  CHECK(sqrt_u(1.0) == 1.0);
  CHECK_THROWS_AS(Preferences::crra(0.0), std::domain_error);
  CHECK_THROWS_AS(Preferences::crra(1.2), std::domain_error);
  CHECK_THROWS_AS(sqrt_u(1.5), std::domain_error);
  CHECK_THROWS_AS(sqrt_u(-0.1), std::domain_error);

  const auto tab = Preferences::tabulated({{0, 0}, {0.5, 0.8}, {1, 1}});
  CHECK(tab(0.25) == doctest::Approx(0.4));
  CHECK(tab(0.75) == doctest::Approx(0.9));
  CHECK(tab(1.0) == 1.0);
  CHECK_FALSE(tab.is_crra());
  CHECK_THROWS_AS(tab.rho(), std::logic_error);
  CHECK_THROWS_AS(Preferences::tabulated({{0, 0}, {0.5, 0.2}, {1, 1}}), std::domain_error);
  CHECK_THROWS_AS(Preferences::tabulated({{0, 0.1}, {1, 1}}), std::domain_error);
  CHECK_THROWS_AS(Preferences::tabulated({{0, 0}, {0.5, 0.5}, {0.5, 0.6}, {1, 1}}), std::domain_error);
  CHECK_THROWS_AS(Preferences::tabulated({{0, 0}}), std::domain_error);
}

TEST_CASE("regime names round trip") {
  for (auto r : {Regime::naive, Regime::sophisticated}) CHECK(parse_regime(to_string(r)) == r);
  CHECK_FALSE(parse_regime("greedy"));
}

TEST_CASE("terminal indifference gap") {
  const auto u = Preferences::crra(0.5);
  CHECK(indifference_gap(u(0.3), 0.3, kTerminal, u, 0.95) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(indifference_gap(1.0, 0.5, kTerminal, u, 0.95) ==
        doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(indifference_gap(0.0, 0.2, kTerminal, u, 0.95) == doctest::Approx(-u(0.2)));
  CHECK_THROWS_AS(indifference_gap(1.1, 0.2, kTerminal, u, 0.95), std::domain_error);
}

TEST_CASE("gap with continuation values") {
  const Flat next(2.0, 1.0, 1.5);
  const auto u = Preferences::crra(0.5);
  // theta + delta (theta*2 + (1-theta)*1) - u(w) - delta*1.5
  const double theta = 0.4, w = 0.36, delta = 0.9;
  const double expected = theta + delta * (theta * 2 + (1 - theta) * 1) - 0.6 - delta * 1.5;
  CHECK(indifference_gap(theta, w, next, u, delta) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(self_employment_value(theta, next, delta) == doctest::Approx(theta + delta * 1.4));
  CHECK(employment_value(theta, w, next, u, delta) == doctest::Approx(0.6 + delta * 1.5));
}

TEST_CASE("terminal cutoffs at the three-period calibration") {
  const auto u = Preferences::crra(0.5);
  SUBCASE("naive") {
    auto c = solve_cutoff(BetaParams(1, 1), Regime::naive, kTerminal, u, 0.95);
    CHECK(c.cutoff == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
    CHECK(c.wage == 0.5);
    c = solve_cutoff(BetaParams(2, 1), Regime::naive, kTerminal, u, 0.95);
    CHECK(c.cutoff == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-10));
    c = solve_cutoff(BetaParams(1, 2), Regime::naive, kTerminal, u, 0.95);
    CHECK(c.cutoff == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-10));
  }
  SUBCASE("sophisticated") {
    auto c = solve_cutoff(BetaParams(1, 1), Regime::sophisticated, kTerminal, u, 0.95);
    CHECK(std::fabs(c.cutoff - 0.5) < 1e-9);
    CHECK(std::fabs(c.wage - 0.25) < 1e-9);
    c = solve_cutoff(BetaParams(1, 2), Regime::sophisticated, kTerminal, u, 0.95);
    CHECK(std::fabs(c.cutoff - 0.451) < 2e-3);
    // wage is the truncated mean (c - (2/3)c^2) / (2 - c) at (1,2)
    CHECK(c.wage == doctest::Approx((c.cutoff - 2.0 / 3 * c.cutoff * c.cutoff) / (2 - c.cutoff)));
  }
}

TEST_CASE("sophisticated terminal fixed points in closed form") {
  for (double rho : {0.3, 0.5, 0.7}) {
    CAPTURE(rho);
    const auto u = Preferences::crra(rho);
    const double e = rho / (1 - rho);
    const auto a = solve_cutoff(BetaParams(1, 1), Regime::sophisticated, kTerminal, u, 0.95);
    CHECK(std::fabs(a.cutoff - std::pow(2.0, -e)) < 1e-8);
    const auto b = solve_cutoff(BetaParams(2, 1), Regime::sophisticated, kTerminal, u, 0.95);
    CHECK(std::fabs(b.cutoff - std::pow(2.0 / 3, e)) < 1e-8);
  }
}

TEST_CASE("risk-neutral sophisticated corner is exactly zero") {
  const auto c = solve_cutoff(BetaParams(1, 1), Regime::sophisticated, kTerminal,
                              Preferences::crra(1.0), 0.95);
  CHECK(c.cutoff == 0.0);
  CHECK(c.wage == 0.0);
}

TEST_CASE("clamping at the ends of the talent range") {
  const auto u = Preferences::crra(0.5);
  // Employment so valuable that even theta = 1 takes it.
  const auto all = solve_cutoff_fixed_wage(0.5, Flat(0, 0, 100), u, 0.9);
  CHECK(all.cutoff == 1.0);
  // Self-employment dominates everywhere.
  const auto none = solve_cutoff_fixed_wage(0.5, Flat(100, 100, 0), u, 0.9);
  CHECK(none.cutoff == 0.0);
}

TEST_CASE("sophisticated wage never exceeds the posterior mean") {
  const auto u = Preferences::crra(0.5);
  for (double a : {0.7, 1.0, 2.0, 5.0}) {
    for (double b : {0.7, 1.0, 3.0}) {
      const BetaParams s(a, b);
      const auto cs = solve_cutoff(s, Regime::sophisticated, kTerminal, u, 0.95);
      if (cs.cutoff < 1.0) CHECK(cs.wage < posterior_mean(s));
    }
  }
}

TEST_CASE("static cutoff matches the terminal solve") {
  const auto u = Preferences::crra(0.5);
  for (auto r : {Regime::naive, Regime::sophisticated}) {
    const auto a = static_cutoff(BetaParams(3, 2), r, u, 0.9);
    const auto b = solve_cutoff(BetaParams(3, 2), r, kTerminal, u, 0.9);
    CHECK(a.cutoff == doctest::Approx(b.cutoff).epsilon(1e-9));
  }
}

TEST_CASE("discount factor domain") {
  CHECK_NOTHROW(check_discount(0.5));
  CHECK_THROWS_AS(check_discount(1.0), std::domain_error);
  CHECK_THROWS_AS(check_discount(0.0), std::domain_error);
}
