#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "careers/beta.hpp"

namespace careers {

/// Bernoulli utility over consumption in [0, 1], normalized so u(0) = 0 and
/// u(1) = 1. Either CRRA x^rho or a concave piecewise-linear table.
class Preferences {
 public:
  struct Knot {
    double x;
    double u;
    friend bool operator==(const Knot&, const Knot&) = default;
  };

  /// u(x) = x^rho, rho in (0, 1].
  static Preferences crra(double rho);

  /// Knots must start at (0, 0), end at (1, 1), be strictly increasing in
  /// both coordinates and have non-increasing chord slopes.
  static Preferences tabulated(std::vector<Knot> knots);

  double operator()(double x) const;

  bool is_crra() const noexcept { return std::holds_alternative<Crra>(kind_); }
  /// CRRA exponent; throws std::logic_error for tabulated preferences.
  double rho() const;
  /// Knots of a tabulated utility; empty for CRRA.
  std::span<const Knot> knots() const noexcept;

  friend bool operator==(const Preferences&, const Preferences&) = default;

 private:
  struct Crra {
    double rho;
    friend bool operator==(const Crra&, const Crra&) = default;
  };
  struct Table {
    std::vector<Knot> knots;
    friend bool operator==(const Table&, const Table&) = default;
  };

  explicit Preferences(std::variant<Crra, Table> kind) : kind_(std::move(kind)) {}

  std::variant<Crra, Table> kind_;
};

/// Normalized utility; throws std::domain_error outside [0, 1].
inline double utility(const Preferences& prefs, double x) { return prefs(x); }

enum class Regime { naive, sophisticated };

std::string_view to_string(Regime r) noexcept;
std::optional<Regime> parse_regime(std::string_view s) noexcept;

/// Cutoff talent at a public state and the flat wage posted there.
struct CutoffWage {
  double cutoff;
  double wage;
  friend bool operator==(const CutoffWage&, const CutoffWage&) = default;
};

/// Worker values one step ahead, evaluated at the worker's own talent:
/// after a public success, after a public failure, and at the unchanged state
/// reached by hidden employment.
class ContinuationValues {
 public:
  virtual ~ContinuationValues() = default;
  virtual double after_success(double theta) const = 0;
  virtual double after_failure(double theta) const = 0;
  virtual double after_employment(double theta) const = 0;
};

/// Last period: nothing follows.
class TerminalContinuation final : public ContinuationValues {
 public:
  double after_success(double) const override { return 0.0; }
  double after_failure(double) const override { return 0.0; }
  double after_employment(double) const override { return 0.0; }
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CutoffOptions {
  /// Bisection stops once the bracket is no wider than this.
  double tolerance = 1e-10;
};

/// Expected lifetime utility of self-employment at talent theta.
double self_employment_value(double theta, const ContinuationValues& next, double delta);

/// Expected lifetime utility of hidden employment at wage w.
double employment_value(double theta, double wage, const ContinuationValues& next,
                        const Preferences& prefs, double delta);

/// Delta = U_S - U_E. Increasing in theta and decreasing in wage whenever the
/// continuation values come from the model's own Bellman recursion.
double indifference_gap(double theta, double wage, const ContinuationValues& next,
                        const Preferences& prefs, double delta);

/// Cutoff for a wage that does not depend on who applies. Returns 1 when
/// Delta(1) <= 0 and 0 when Delta(0) >= 0; otherwise bisects on theta.
CutoffWage solve_cutoff_fixed_wage(double wage, const ContinuationValues& next,
                                   const Preferences& prefs, double delta,
                                   CutoffOptions options = {});

/// Cutoff when the wage is the mean talent of the applicant pool [0, c].
///
/// pool_mean must be continuous and non-decreasing on (0, 1] with limit 0 at
/// 0+. The cutoff solves Delta(c; pool_mean(c)) = 0 by bisection between the
/// smallest resolvable cutoff (options.tolerance) and 1. If Delta is already
/// non-negative at that probe the pool is empty: cutoff 0, wage 0. The crossing
/// is unique only while Delta(0) < 0 for every positive wage; continuation
/// values that reward a deliberate failure can break this, and the empty pool
/// then wins.
CutoffWage solve_cutoff_pooled(const std::function<double(double)>& pool_mean,
                               const ContinuationValues& next, const Preferences& prefs,
                               double delta, CutoffOptions options = {});

/// Cutoff and wage at a Beta public state under the given pricing regime.
CutoffWage solve_cutoff(const BetaParams& state, Regime regime, const ContinuationValues& next,
                        const Preferences& prefs, double delta, CutoffOptions options = {});

/// Throws std::domain_error unless 0 < delta < 1.
void check_discount(double delta);

}  // namespace careers
