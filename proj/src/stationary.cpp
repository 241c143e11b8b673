#include "careers/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail.hpp"

namespace careers {

void validate(const LatticeSpec& spec) {
  if (spec.max_depth < 1) throw std::invalid_argument("lattice: max_depth must be >= 1");
  if (spec.theta_grid_size < 257) {
    throw std::invalid_argument("lattice: theta_grid_size must be >= 257");
  }
  check_discount(spec.delta);
  if (!(spec.tolerance > 0.0)) throw std::invalid_argument("lattice: tolerance must be positive");
  if (spec.max_sweeps < 1) throw std::invalid_argument("lattice: max_sweeps must be >= 1");
  if (!(spec.cutoff_options.tolerance > 0.0)) {
    throw std::invalid_argument("lattice: cutoff tolerance must be positive");
  }
}

const CutoffWage& StationarySolution::at(const BetaParams& state) const {
  const auto p = lattice.locate(state);
  if (!p || p->depth() > lattice.max_depth()) {
    throw UnreachableState("state (" + std::to_string(state.alpha()) + ", " +
                           std::to_string(state.beta()) + ") is outside the lattice");
  }
  return cutoffs[Lattice::index(*p)];
}

const ValueTable& StationarySolution::value(const BetaParams& state) const {
  (void)at(state);
  return values[Lattice::index(*lattice.locate(state))];
}

PolicyTable StationarySolution::table() const {
  PolicyTable::Header h{HorizonKind::stationary, spec.prior,     spec.regime,      spec.prefs,
                        spec.delta,              spec.max_depth, converged, sup_norm_residual};
  return PolicyTable(std::move(h), {cutoffs});
}

StationarySolution value_iterate(const LatticeSpec& spec) {
  validate(spec);
  const Lattice lattice(spec.prior, spec.max_depth);
  const std::size_t states = lattice.size();
  const std::size_t n = spec.theta_grid_size;
  const double d = spec.delta;

  StationarySolution sol{spec, lattice, std::vector<CutoffWage>(states),
                         std::vector<ValueTable>(states, ValueTable(n)), false, 0, 0.0, {}};
  std::vector<ValueTable> next(states, ValueTable(n));

  const std::size_t interior = Lattice::count(spec.max_depth - 1);
  for (std::size_t idx = interior; idx < states; ++idx) {
    const BetaParams state = lattice.state(idx);
    const CutoffWage cw =
        static_cutoff(state, spec.regime, spec.prefs, spec.delta, spec.cutoff_options);
    sol.cutoffs[idx] = cw;
    const double employ = spec.prefs(cw.wage);
    auto& table = sol.values[idx];
    for (std::size_t i = 0; i < n; ++i) table[i] = std::max(table.theta(i), employ) / (1.0 - d);
    next[idx] = table;
  }

  std::vector<double> change(interior, 0.0);
  for (int sweep = 1; sweep <= spec.max_sweeps; ++sweep) {
    const auto& current = sol.values;
    detail::parallel_for(interior, spec.threads, [&](std::size_t idx) {
      const auto p = Lattice::point(idx);
      const BetaParams state = lattice.state(p);
      const detail::LatticeContinuation cont(current, p);
      CutoffWage cw;
      try {
        cw = solve_cutoff(state, spec.regime, cont, spec.prefs, d, spec.cutoff_options);
      } catch (const SolverError& e) {
        throw SolverError(std::string(e.what()) + " at state (" + std::to_string(state.alpha()) +
                          ", " + std::to_string(state.beta()) + ")");
      }
      sol.cutoffs[idx] = cw;
      const auto& up = current[Lattice::index(p.successes + 1, p.failures)];
      const auto& down = current[Lattice::index(p.successes, p.failures + 1)];
      const auto& stay = current[idx];
      auto& out = next[idx];
      const double employ_now = spec.prefs(cw.wage);
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double theta = out.theta(i);
        const double self = theta + d * (theta * up[i] + (1.0 - theta) * down[i]);
        const double v = std::max(self, employ_now + d * stay[i]);
        worst = std::max(worst, std::fabs(v - stay[i]));
        out[i] = v;
      }
      change[idx] = worst;
    });
    std::swap(sol.values, next);
    const double residual = change.empty() ? 0.0 : *std::max_element(change.begin(), change.end());
    sol.residual_history.push_back(residual);
    sol.sweeps_used = sweep;
    sol.sup_norm_residual = residual;
    if (residual <= spec.tolerance) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

std::vector<RegionEntry> absorbing_region(const StationarySolution& sol) {
  if (!sol.converged) {
    throw std::logic_error("absorbing_region: solution did not converge (residual " +
                           std::to_string(sol.sup_norm_residual) + ")");
  }
  std::vector<RegionEntry> region;
  region.reserve(sol.cutoffs.size());
  for (std::size_t idx = 0; idx < sol.cutoffs.size(); ++idx) {
    const BetaParams state = sol.lattice.state(idx);
    const double c = sol.cutoffs[idx].cutoff;
    region.push_back({state, c, beta_cdf(state, c)});
  }
  return region;
}

std::string_view to_string(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::delta:
      return "delta";
    case SweepParameter::rho:
      return "rho";
    case SweepParameter::depth:
      return "depth";
  }
  return "delta";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view s) noexcept {
  if (s == "delta") return SweepParameter::delta;
  if (s == "rho") return SweepParameter::rho;
  if (s == "depth") return SweepParameter::depth;
  return std::nullopt;
}

std::vector<SweepPoint> sweep(const LatticeSpec& spec, SweepParameter parameter,
                              std::span<const double> values) {
  std::vector<SweepPoint> out;
  out.reserve(values.size());
  for (const double v : values) {
    SweepPoint point{v, std::nullopt, 0, {}};
    try {
      LatticeSpec s = spec;
      switch (parameter) {
        case SweepParameter::delta:
          s.delta = v;
          break;
        case SweepParameter::rho:
          s.prefs = Preferences::crra(v);
          break;
        case SweepParameter::depth:
          if (v != std::floor(v)) throw std::invalid_argument("depth values must be integers");
          s.max_depth = static_cast<int>(v);
          break;
      }
      const StationarySolution sol = value_iterate(s);
      point.table = sol.table();
      point.sweeps_used = sol.sweeps_used;
      if (!sol.converged) {
        point.error = "not converged: residual " + std::to_string(sol.sup_norm_residual);
      }
    } catch (const std::exception& e) {
      point.table.reset();
      point.error = e.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace careers
