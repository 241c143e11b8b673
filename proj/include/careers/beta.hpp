#pragma once

// Beta-distribution primitives shared by every solver: posterior moments,
// conjugate updating, incomplete beta integrals and truncated means.

namespace careers {

/// Beta(alpha, beta) posterior over talent; the market's public belief.
class BetaParams {
 public:
  /// Throws std::domain_error unless both parameters are finite and positive.
  BetaParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// Career length proxy alpha + beta.
  double depth() const noexcept { return alpha_ + beta_; }

  friend bool operator==(const BetaParams&, const BetaParams&) = default;

 private:
  double alpha_;
  double beta_;
};

enum class Outcome { failure = 0, success = 1 };

/// One-step movement of the posterior mean after a success (up) or failure (down).
struct Drift {
  double up;
  double down;
};

double posterior_mean(const BetaParams& p) noexcept;

BetaParams update(const BetaParams& p, Outcome y);

Drift one_step_drift(const BetaParams& p) noexcept;

/// log B(a, b) through lgamma.
double log_beta(double a, double b);

/// Unregularized lower incomplete beta  B(c; a, b) = int_0^c t^(a-1) (1-t)^(b-1) dt.
///
/// Evaluated with the Lentz continued fraction, switching to the reflected
/// integral B(a,b) - B(1-c; b, a) when c > (a+1)/(a+b+2). Relative error is
/// below 1e-12 across the parameter range the solvers use. Throws
/// std::domain_error if c is outside [0, 1] or a, b are not positive.
double incomplete_beta(double c, double a, double b);

/// log B(c; a, b); -inf at c == 0. Stays finite where B(c; a, b) underflows.
double log_incomplete_beta(double c, double a, double b);

/// I_c(a, b) = B(c; a, b) / B(a, b), the Beta CDF.
double regularized_incomplete_beta(double c, double a, double b);

double beta_pdf(const BetaParams& p, double x);

inline double beta_cdf(const BetaParams& p, double x) {
  return regularized_incomplete_beta(x, p.alpha(), p.beta());
}

/// Inverse CDF by bisection on the regularized incomplete beta.
double beta_quantile(const BetaParams& p, double prob);

/// E[theta | theta <= c] under Beta(alpha, beta), i.e. B(c; a+1, b) / B(c; a, b).
/// Equals posterior_mean(p) exactly at c == 1. Throws std::domain_error for
/// c <= 0 (the truncation set is empty) or c > 1.
double truncated_mean(const BetaParams& p, double c);

/// d/dc of truncated_mean: f(c) / F(c) * (c - m(c)). Requires 0 < c < 1.
double truncated_mean_derivative(const BetaParams& p, double c);

}  // namespace careers
