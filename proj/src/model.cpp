#include "careers/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace careers {

Preferences Preferences::crra(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::domain_error("Preferences: CRRA exponent must lie in (0,1], got " +
                            std::to_string(rho));
  }
  return Preferences(Crra{rho});
}

Preferences Preferences::tabulated(std::vector<Knot> knots) {
  if (knots.size() < 2) throw std::domain_error("Preferences: need at least two knots");
  if (knots.front().x != 0.0 || knots.front().u != 0.0) {
    throw std::domain_error("Preferences: first knot must be (0, 0)");
  }
  if (knots.back().x != 1.0 || knots.back().u != 1.0) {
    throw std::domain_error("Preferences: last knot must be (1, 1)");
  }
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double dx = knots[i].x - knots[i - 1].x;
    const double du = knots[i].u - knots[i - 1].u;
    if (!(dx > 0.0)) throw std::domain_error("Preferences: knot x values must increase");
    if (!(du > 0.0)) throw std::domain_error("Preferences: utility must be strictly increasing");
    const double slope = du / dx;
    if (slope > prev_slope * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "Preferences: chord slopes must be non-increasing (concavity), violated at knot " << i;
      throw std::domain_error(msg.str());
    }
    prev_slope = slope;
  }
  return Preferences(Table{std::move(knots)});
}

double Preferences::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("utility: consumption must lie in [0,1], got " + std::to_string(x));
  }
  if (const auto* c = std::get_if<Crra>(&kind_)) {
    if (c->rho == 1.0) return x;
    return std::pow(x, c->rho);
  }
  const auto& k = std::get<Table>(kind_).knots;
  const auto it = std::upper_bound(k.begin(), k.end(), x,
                                   [](double v, const Knot& knot) { return v < knot.x; });
  if (it == k.end()) return k.back().u;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.u + (x - lo.x) * (hi.u - lo.u) / (hi.x - lo.x);
}

double Preferences::rho() const {
  if (const auto* c = std::get_if<Crra>(&kind_)) return c->rho;
  throw std::logic_error("Preferences: tabulated utility has no CRRA exponent");
}

std::span<const Preferences::Knot> Preferences::knots() const noexcept {
  if (const auto* t = std::get_if<Table>(&kind_)) return t->knots;
  return {};
}

std::string_view to_string(Regime r) noexcept {
  return r == Regime::naive ? "naive" : "sophisticated";
}

std::optional<Regime> parse_regime(std::string_view s) noexcept {
  if (s == "naive") return Regime::naive;
  if (s == "sophisticated") return Regime::sophisticated;
  return std::nullopt;
}

void check_discount(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("discount factor must lie in (0,1), got " + std::to_string(delta));
  }
}

double self_employment_value(double theta, const ContinuationValues& next, double delta) {
  return theta +
         delta * (theta * next.after_success(theta) + (1.0 - theta) * next.after_failure(theta));
}

double employment_value(double theta, double wage, const ContinuationValues& next,
                        const Preferences& prefs, double delta) {
  return prefs(wage) + delta * next.after_employment(theta);
}

double indifference_gap(double theta, double wage, const ContinuationValues& next,
                        const Preferences& prefs, double delta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::domain_error("indifference_gap: theta must lie in [0,1]");
  }
  return self_employment_value(theta, next, delta) -
         employment_value(theta, wage, next, prefs, delta);
}

namespace {

double checked(double v, double theta) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "solve_cutoff: non-finite indifference gap at theta=" << theta
        << " (continuation values are broken)";
    throw SolverError(msg.str());
  }
  return v;
}

// Invariant: gap(lo) <= 0 < gap(hi). Ties move lo up, so the returned cutoff
// is the upper end of the employment set.
template <class Gap>
double bisect(Gap&& gap, double lo, double hi, double tolerance) {
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (checked(gap(mid), mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CutoffWage solve_cutoff_fixed_wage(double wage, const ContinuationValues& next,
                                   const Preferences& prefs, double delta,
                                   CutoffOptions options) {
  check_discount(delta);
  auto gap = [&](double theta) { return indifference_gap(theta, wage, next, prefs, delta); };
  if (checked(gap(1.0), 1.0) <= 0.0) return {1.0, wage};
  if (checked(gap(0.0), 0.0) >= 0.0) return {0.0, wage};
  return {bisect(gap, 0.0, 1.0, options.tolerance), wage};
}

CutoffWage solve_cutoff_pooled(const std::function<double(double)>& pool_mean,
                               const ContinuationValues& next, const Preferences& prefs,
                               double delta, CutoffOptions options) {
  check_discount(delta);
  auto gap = [&](double c) { return indifference_gap(c, pool_mean(c), next, prefs, delta); };
  if (checked(gap(1.0), 1.0) <= 0.0) return {1.0, pool_mean(1.0)};
  // The pool mean is undefined at c = 0; probe the smallest resolvable cutoff.
  const double floor = options.tolerance;
  if (checked(gap(floor), floor) >= 0.0) return {0.0, 0.0};
  const double c = bisect(gap, floor, 1.0, options.tolerance);
  return {c, pool_mean(c)};
}

CutoffWage solve_cutoff(const BetaParams& state, Regime regime, const ContinuationValues& next,
                        const Preferences& prefs, double delta, CutoffOptions options) {
  if (regime == Regime::naive) {
    return solve_cutoff_fixed_wage(posterior_mean(state), next, prefs, delta, options);
  }
  return solve_cutoff_pooled([&](double c) { return truncated_mean(state, c); }, next, prefs,
                             delta, options);
}

}  // namespace careers
