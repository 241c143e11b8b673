#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "careers/beta.hpp"
#include "careers/model.hpp"

namespace careers {

/// Posterior over talent on a discrete grid in [0, 1].
///
/// Bayes updates act on the masses at the grid values. Moments spread mass i
/// uniformly over its cell (the span between the midpoints to its
/// neighbours), so the mean truncated below c is continuous and increasing in
/// c and tends to the lower edge of the first occupied cell as c falls.
class BeliefVector {
 public:
  /// Throws std::invalid_argument unless the grid is strictly increasing in
  /// [0, 1], masses are non-negative and sum to 1 within 1e-12.
  BeliefVector(std::vector<double> grid, std::vector<double> mass);

  /// Beta posterior discretized on `points` uniform grid values including
  /// both endpoints; mass i is the Beta probability of cell i.
  static BeliefVector discretized_beta(const BetaParams& p, std::size_t points = 2001);

  std::size_t size() const noexcept { return grid_.size(); }
  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> mass() const noexcept { return mass_; }

  bool uniform() const noexcept;

  double mean() const noexcept;
  /// Mass at or below c.
  double mass_below(double c) const;
  /// E[theta | theta <= c]. Below the first occupied cell it returns that
  /// cell's lower edge, the right limit.
  double truncated_mean(double c) const;

 private:
  std::vector<double> grid_;
  std::vector<double> mass_;
  std::vector<double> cell_lo_;
  std::vector<double> cell_hi_;
  // Prefix sums of mass and first moment over whole cells.
  std::vector<double> cum_mass_;
  std::vector<double> cum_moment_;
};

class DegenerateUpdate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// mass_i' proportional to mass_i * likelihood_i. Throws DegenerateUpdate if
/// the normalizer is <= 1e-300 and std::invalid_argument for likelihoods
/// outside [0, 1] or of the wrong length.
BeliefVector bayes_update(const BeliefVector& b, std::span<const double> likelihood);

/// Belief after a public self-employment outcome (likelihood theta or 1 - theta).
BeliefVector outcome_update(const BeliefVector& b, Outcome y);

/// Public signal emitted during firm employment:
/// P(z = 1 | theta) = phi * theta + (1 - phi) * zbar.
struct SignalSpec {
  double phi = 0.0;
  double zbar = 0.5;

  double p_one(double theta) const noexcept { return phi * theta + (1.0 - phi) * zbar; }
};

/// Throws std::domain_error unless 0 <= phi < 1 and 0 < zbar < 1.
void validate(const SignalSpec& sig);

BeliefVector firm_signal_update(const BeliefVector& b, const SignalSpec& sig, bool z);

struct GridProblem {
  BeliefVector prior = BeliefVector::discretized_beta(BetaParams(1.0, 1.0));
  SignalSpec signal{};
  double delta = 0.95;
  Preferences prefs = Preferences::crra(0.5);
  Regime regime = Regime::naive;
  int periods = 3;
  std::size_t node_budget = 1'000'000;
  CutoffOptions cutoff_options{};
  /// Worker threads per date; results do not depend on this.
  unsigned threads = 1;
};

/// Throws std::invalid_argument / std::domain_error on an invalid problem.
void validate(const GridProblem& problem);

/// Number of public belief nodes across all dates.
std::size_t grid_node_count(int periods, bool signal_informative);

/// Public history summarized by counts: self-employment successes and
/// failures, and firm-signal ones and zeros. Bayes updates commute, so the
/// counts determine the belief; with phi = 0 the signal counts stay zero.
struct GridNodeKey {
  int successes = 0;
  int failures = 0;
  int signal_ones = 0;
  int signal_zeros = 0;

  auto operator<=>(const GridNodeKey&) const = default;
};

struct GridNode {
  GridNodeKey key;
  CutoffWage policy;
  double belief_mean;
  /// Posterior mass of the employment set theta <= cutoff.
  double employment_mass;
};

class TreeTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridPolicy {
 public:
  int periods() const noexcept { return static_cast<int>(dates_.size()); }
  const GridNode& root() const { return dates_.front().front(); }
  /// Throws std::out_of_range if no node with this key exists at the date.
  const GridNode& at(int date, const GridNodeKey& key) const;
  std::span<const GridNode> nodes(int date) const { return dates_.at(static_cast<std::size_t>(date)); }
  std::size_t node_count() const noexcept;

 private:
  friend GridPolicy solve_grid(const GridProblem& problem);
  std::vector<std::vector<GridNode>> dates_;
  std::vector<std::map<GridNodeKey, std::size_t>> index_;
};

/// Backward induction over public belief nodes for a finite horizon. Self
/// employment branches on the outcome; firm employment branches on the
/// public signal (and leaves the belief unchanged when phi = 0). Naive wages
/// are the belief mean, sophisticated wages the belief mean below the cutoff.
///
/// The belief grid must be uniform; value functions live on the same grid.
/// Throws TreeTooLarge when the node count exceeds the budget.
GridPolicy solve_grid(const GridProblem& problem);

}  // namespace careers
