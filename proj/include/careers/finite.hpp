#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "careers/lattice.hpp"
#include "careers/model.hpp"
#include "careers/policy.hpp"
#include "careers/value_table.hpp"

namespace careers {

/// How continuation values are represented during backward induction.
enum class ValueRepresentation {
  /// Dense theta grid with linear interpolation.
  grid,
  /// Exact recursive evaluation of the Bellman maximum from later-date wages.
  /// Cost grows like 3^(periods - date); limited to short horizons.
  exact,
};

struct FiniteHorizonSpec {
  int periods = 1;
  BetaParams prior{1.0, 1.0};
  double delta = 0.95;
  Preferences prefs = Preferences::crra(0.5);
  Regime regime = Regime::naive;
  std::size_t theta_grid_size = 4097;
  ValueRepresentation representation = ValueRepresentation::grid;
  /// Keep every date's value tables (needed by value_at on the grid path).
  bool retain_values = true;
  CutoffOptions cutoff_options{};
};

inline constexpr int kMaxExactPeriods = 6;

/// Throws std::invalid_argument / std::domain_error on an invalid spec,
/// including retained value tables beyond ~200 MB.
void validate(const FiniteHorizonSpec& spec);

/// Backward-induction solution: a cutoff and wage for every (date, reachable state).
///
/// At date t the reachable states are prior + (k successes, f failures) with
/// k + f <= t, since hidden employment leaves the state unchanged.
class FinitePolicy {
 public:
  const FiniteHorizonSpec& spec() const noexcept { return spec_; }
  int periods() const noexcept { return spec_.periods; }
  const BetaParams& prior() const noexcept { return spec_.prior; }
  Regime regime() const noexcept { return spec_.regime; }

  /// Throws UnreachableState for dates outside [0, periods) or states not
  /// reachable by that date.
  const CutoffWage& at(int date, const BetaParams& state) const;
  const CutoffWage& at(int date, int successes, int failures) const;

  bool has_value_tables() const noexcept { return !values_.empty(); }
  /// V_t(.; state) on the theta grid. Requires retained values.
  const ValueTable& values(int date, int successes, int failures) const;

  PolicyTable table() const;

  /// Visits every (date, lattice point, state, cutoff/wage) in date-major order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    const Lattice lattice(spec_.prior, 0);
    for (int t = 0; t < periods(); ++t) {
      for (std::size_t i = 0; i < layers_[static_cast<std::size_t>(t)].size(); ++i) {
        const auto p = Lattice::point(i);
        fn(t, p, lattice.state(p), layers_[static_cast<std::size_t>(t)][i]);
      }
    }
  }

 private:
  friend FinitePolicy solve_finite(const FiniteHorizonSpec& spec);
  explicit FinitePolicy(FiniteHorizonSpec spec) : spec_(std::move(spec)) {}

  Lattice::Point locate(int date, const BetaParams& state) const;

  FiniteHorizonSpec spec_;
  std::vector<std::vector<CutoffWage>> layers_;
  std::vector<std::vector<ValueTable>> values_;
};

FinitePolicy solve_finite(const FiniteHorizonSpec& spec);

/// Cutoff and wage posted at `date` after the public history `history`
/// (one outcome per self-employment period). Throws std::invalid_argument if
/// the history is longer than the date.
CutoffWage branch_wages(const FinitePolicy& policy, int date, std::span<const Outcome> history);

/// V_t(theta; state). Uses the retained grid tables, otherwise exact recursion
/// when at most 12 periods remain. Throws UnreachableState for states not
/// reachable by `date`.
double value_at(const FinitePolicy& policy, int date, double theta, const BetaParams& state);

/// V_t(theta; state) by exact recursion through the stored wages.
double exact_value_at(const FinitePolicy& policy, int date, double theta,
                      const BetaParams& state);

struct BranchValues {
  double self_employment;
  double employment;
};

/// U_S and U_E at (date, state) recomputed from the stored policy and the
/// next date's value function.
BranchValues branch_values(const FinitePolicy& policy, int date, double theta,
                           const BetaParams& state);

}  // namespace careers
