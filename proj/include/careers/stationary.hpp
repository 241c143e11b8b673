#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "careers/lattice.hpp"
#include "careers/model.hpp"
#include "careers/policy.hpp"
#include "careers/value_table.hpp"

namespace careers {

/// Stationary problem on the Beta lattice truncated at depth max_depth.
struct LatticeSpec {
  BetaParams prior{1.0, 1.0};
  int max_depth = 12;
  std::size_t theta_grid_size = 4097;
  double delta = 0.95;
  Preferences prefs = Preferences::crra(0.5);
  Regime regime = Regime::naive;
  double tolerance = 1e-10;
  int max_sweeps = 10000;
  /// Cutoff bisection width inside the sweeps. Finer than the residual
  /// tolerance so that cutoff rounding cannot keep the residual above it.
  CutoffOptions cutoff_options{1e-14};
  /// Worker threads per sweep; results do not depend on this.
  unsigned threads = 1;
};

/// Throws std::invalid_argument / std::domain_error on an invalid spec.
void validate(const LatticeSpec& spec);

struct StationarySolution {
  LatticeSpec spec;
  Lattice lattice;
  /// Indexed by Lattice::index.
  std::vector<CutoffWage> cutoffs;
  std::vector<ValueTable> values;
  bool converged = false;
  int sweeps_used = 0;
  double sup_norm_residual = 0.0;
  /// Sup-norm change of V after each sweep.
  std::vector<double> residual_history;

  /// Throws UnreachableState if the state is not on the lattice.
  const CutoffWage& at(const BetaParams& state) const;
  const ValueTable& value(const BetaParams& state) const;
  PolicyTable table() const;
};

/// Value iteration from V = 0. Each sweep resolves every interior state's
/// cutoff and wage against the previous value table and then applies the
/// Bellman update on the theta grid. States at the depth cap keep the
/// quasi-static closure V = max(theta, u(w)) / (1 - delta).
///
/// Non-convergence is reported through `converged` and the residual.
StationarySolution value_iterate(const LatticeSpec& spec);

struct RegionEntry {
  BetaParams state;
  double cutoff;
  /// P(theta <= cutoff) under the Beta posterior at the state.
  double mass;
};

/// Absorbing employment region {(state, theta): theta <= cutoff(state)} with
/// its posterior mass per state. Throws std::logic_error for unconverged input.
std::vector<RegionEntry> absorbing_region(const StationarySolution& sol);

enum class SweepParameter { delta, rho, depth };

std::string_view to_string(SweepParameter p) noexcept;
std::optional<SweepParameter> parse_sweep_parameter(std::string_view s) noexcept;

struct SweepPoint {
  double value;
  /// Cutoff map and diagnostics; empty when the point failed.
  std::optional<PolicyTable> table;
  int sweeps_used = 0;
  std::string error;
};

/// One stationary solve per parameter value. Failures are recorded per point
/// and do not stop the sweep.
std::vector<SweepPoint> sweep(const LatticeSpec& spec, SweepParameter parameter,
                              std::span<const double> values);

}  // namespace careers
