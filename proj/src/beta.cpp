#include "careers/beta.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace careers {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kCfEps = 1e-16;
constexpr int kCfMaxIter = 20000;

void check_shape(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("incomplete beta: shape parameters must be positive, got a=" +
                            std::to_string(a) + " b=" + std::to_string(b));
  }
}

void check_unit(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::domain_error("incomplete beta: upper limit must lie in [0,1], got " +
                            std::to_string(c));
  }
}

// Modified Lentz evaluation of the continued fraction for I_x(a,b).
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kCfEps) return h;
  }
  throw std::runtime_error("incomplete beta: continued fraction did not converge");
}

// log B(x; a, b) for x below the reflection threshold.
double log_incomplete_beta_direct(double x, double a, double b) {
  return a * std::log(x) + b * std::log1p(-x) - std::log(a) +
         std::log(beta_continued_fraction(x, a, b));
}

}  // namespace

BetaParams::BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::domain_error("BetaParams: alpha and beta must be positive, got (" +
                            std::to_string(alpha) + ", " + std::to_string(beta) + ")");
  }
}

double posterior_mean(const BetaParams& p) noexcept { return p.alpha() / (p.alpha() + p.beta()); }

BetaParams update(const BetaParams& p, Outcome y) {
  return y == Outcome::success ? BetaParams(p.alpha() + 1.0, p.beta())
                               : BetaParams(p.alpha(), p.beta() + 1.0);
}

Drift one_step_drift(const BetaParams& p) noexcept {
  const double n = p.alpha() + p.beta();
  const double denom = n * (n + 1.0);
  return {p.beta() / denom, p.alpha() / denom};
}

double log_beta(double a, double b) {
  check_shape(a, b);
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double log_incomplete_beta(double c, double a, double b) {
  check_shape(a, b);
  check_unit(c);
  if (c == 0.0) return -std::numeric_limits<double>::infinity();
  const double lb = log_beta(a, b);
  if (c == 1.0) return lb;
  if (c < (a + 1.0) / (a + b + 2.0)) return log_incomplete_beta_direct(c, a, b);
  // Reflection: B(c; a, b) = B(a, b) - B(1 - c; b, a); the subtracted tail is the small part.
  const double tail = log_incomplete_beta_direct(1.0 - c, b, a);
  return lb + std::log1p(-std::exp(tail - lb));
}

double incomplete_beta(double c, double a, double b) {
  return std::exp(log_incomplete_beta(c, a, b));
}

double regularized_incomplete_beta(double c, double a, double b) {
  check_shape(a, b);
  check_unit(c);
  if (c == 0.0) return 0.0;
  if (c == 1.0) return 1.0;
  if (c < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_incomplete_beta_direct(c, a, b) - log_beta(a, b));
  }
  return -std::expm1(log_incomplete_beta_direct(1.0 - c, b, a) - log_beta(a, b));
}

double beta_pdf(const BetaParams& p, double x) {
  check_unit(x);
  const double a = p.alpha();
  const double b = p.beta();
  if (x == 0.0) {
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    return a == 1.0 ? std::exp(-log_beta(a, b)) : 0.0;
  }
  if (x == 1.0) {
    if (b < 1.0) return std::numeric_limits<double>::infinity();
    return b == 1.0 ? std::exp(-log_beta(a, b)) : 0.0;
  }
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

double beta_quantile(const BetaParams& p, double prob) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw std::domain_error("beta_quantile: probability must lie in [0,1]");
  }
  if (prob == 0.0) return 0.0;
  if (prob == 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (beta_cdf(p, mid) < prob) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double truncated_mean(const BetaParams& p, double c) {
  if (!(c > 0.0) || c > 1.0) {
    throw std::domain_error("truncated_mean: cutoff must lie in (0,1], got " + std::to_string(c));
  }
  if (c == 1.0) return posterior_mean(p);
  const double a = p.alpha();
  const double b = p.beta();
  return std::exp(log_incomplete_beta(c, a + 1.0, b) - log_incomplete_beta(c, a, b));
}

double truncated_mean_derivative(const BetaParams& p, double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw std::domain_error("truncated_mean_derivative: cutoff must lie in (0,1), got " +
                            std::to_string(c));
  }
  const double a = p.alpha();
  const double b = p.beta();
  // f(c)/F(c): the 1/B(a,b) normalizations cancel.
  const double hazard = std::exp((a - 1.0) * std::log(c) + (b - 1.0) * std::log1p(-c) -
                                 log_incomplete_beta(c, a, b));
  return hazard * (c - truncated_mean(p, c));
}

}  // namespace careers
