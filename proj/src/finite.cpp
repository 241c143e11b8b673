#include "careers/finite.hpp"

#include "detail.hpp"

#include <algorithm>
#include <string>

namespace careers {

namespace {

constexpr std::size_t kMaxRetainedCells = 25'000'000;
constexpr int kMaxExactRemaining = 12;

double exact_value(const std::vector<std::vector<CutoffWage>>& layers,
                   const FiniteHorizonSpec& spec, int date, int k, int f, double theta) {
  if (date >= spec.periods) return 0.0;
  const double wage = layers[static_cast<std::size_t>(date)][Lattice::index(k, f)].wage;
  const double up = exact_value(layers, spec, date + 1, k + 1, f, theta);
  const double down = exact_value(layers, spec, date + 1, k, f + 1, theta);
  const double stay = exact_value(layers, spec, date + 1, k, f, theta);
  const double self = theta + spec.delta * (theta * up + (1.0 - theta) * down);
  const double employ = spec.prefs(wage) + spec.delta * stay;
  return std::max(self, employ);
}

// Continuation from date `date` onward, evaluated exactly from stored wages.
class ExactContinuation final : public ContinuationValues {
 public:
  ExactContinuation(const std::vector<std::vector<CutoffWage>>& layers,
                    const FiniteHorizonSpec& spec, int date, Lattice::Point p)
      : layers_(layers), spec_(spec), date_(date), p_(p) {}

  double after_success(double theta) const override {
    return exact_value(layers_, spec_, date_, p_.successes + 1, p_.failures, theta);
  }
  double after_failure(double theta) const override {
    return exact_value(layers_, spec_, date_, p_.successes, p_.failures + 1, theta);
  }
  double after_employment(double theta) const override {
    return exact_value(layers_, spec_, date_, p_.successes, p_.failures, theta);
  }

 private:
  const std::vector<std::vector<CutoffWage>>& layers_;
  const FiniteHorizonSpec& spec_;
  int date_;
  Lattice::Point p_;
};

std::size_t retained_cells(const FiniteHorizonSpec& spec) {
  std::size_t states = 0;
  for (int t = 0; t < spec.periods; ++t) states += Lattice::count(t);
  return states * spec.theta_grid_size;
}

void fill_values(ValueTable& out, const CutoffWage& cw, const std::vector<ValueTable>* next, Lattice::Point p,
                 const FiniteHorizonSpec& spec) {
  const std::size_t n = out.size();
  const double employ_now = spec.prefs(cw.wage);
  if (next == nullptr) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out.theta(i), employ_now);
    return;
  }
  const auto& up = (*next)[Lattice::index(p.successes + 1, p.failures)];
  const auto& down = (*next)[Lattice::index(p.successes, p.failures + 1)];
  const auto& stay = (*next)[Lattice::index(p.successes, p.failures)];
  const double d = spec.delta;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = out.theta(i);
    const double self = theta + d * (theta * up[i] + (1.0 - theta) * down[i]);
    const double employ = employ_now + d * stay[i];
    out[i] = std::max(self, employ);
  }
}

}  // namespace

void validate(const FiniteHorizonSpec& spec) {
  if (spec.periods < 1) throw std::invalid_argument("finite horizon: periods must be >= 1");
  check_discount(spec.delta);
  if (spec.theta_grid_size < 2) {
    throw std::invalid_argument("finite horizon: theta grid needs at least 2 points");
  }
  if (spec.representation == ValueRepresentation::exact && spec.periods > kMaxExactPeriods) {
    throw std::invalid_argument("finite horizon: exact representation supports at most " +
                                std::to_string(kMaxExactPeriods) + " periods");
  }
  if (spec.representation == ValueRepresentation::grid && spec.retain_values &&
      retained_cells(spec) > kMaxRetainedCells) {
    throw std::invalid_argument(
        "finite horizon: retaining every value table would exceed the memory budget; "
        "set retain_values = false");
  }
  if (!(spec.cutoff_options.tolerance > 0.0)) {
    throw std::invalid_argument("finite horizon: cutoff tolerance must be positive");
  }
}

FinitePolicy solve_finite(const FiniteHorizonSpec& spec) {
  validate(spec);
  FinitePolicy policy(spec);
  const auto T = static_cast<std::size_t>(spec.periods);
  const Lattice lattice(spec.prior, spec.periods);
  policy.layers_.resize(T);
  for (std::size_t t = 0; t < T; ++t) policy.layers_[t].resize(Lattice::count(static_cast<int>(t)));

  if (spec.representation == ValueRepresentation::exact) {
    for (int t = spec.periods - 1; t >= 0; --t) {
      auto& layer = policy.layers_[static_cast<std::size_t>(t)];
      for (std::size_t i = 0; i < layer.size(); ++i) {
        const auto p = Lattice::point(i);
        const ExactContinuation next(policy.layers_, policy.spec_, t + 1, p);
        layer[i] = solve_cutoff(lattice.state(p), spec.regime, next, spec.prefs, spec.delta,
                                spec.cutoff_options);
      }
    }
    return policy;
  }

  if (spec.retain_values) policy.values_.resize(T);
  std::vector<ValueTable> rolling;
  const std::vector<ValueTable>* next = nullptr;
  const TerminalContinuation terminal;

  for (int t = spec.periods - 1; t >= 0; --t) {
    const auto tu = static_cast<std::size_t>(t);
    std::vector<ValueTable> current(Lattice::count(t), ValueTable(spec.theta_grid_size));
    auto& layer = policy.layers_[tu];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const auto p = Lattice::point(i);
      const BetaParams state = lattice.state(p);
      try {
        if (next == nullptr) {
          layer[i] = solve_cutoff(state, spec.regime, terminal, spec.prefs, spec.delta,
                                  spec.cutoff_options);
        } else {
          const detail::LatticeContinuation cont(*next, p);
          layer[i] = solve_cutoff(state, spec.regime, cont, spec.prefs, spec.delta,
                                  spec.cutoff_options);
        }
      } catch (const SolverError& e) {
        throw SolverError(std::string(e.what()) + " at date " + std::to_string(t) + ", state (" +
                          std::to_string(state.alpha()) + ", " + std::to_string(state.beta()) +
                          ")");
      }
      fill_values(current[i], layer[i], next, p, spec);
    }
    if (spec.retain_values) {
      policy.values_[tu] = std::move(current);
      next = &policy.values_[tu];
    } else {
      rolling = std::move(current);
      next = &rolling;
    }
  }
  return policy;
}

Lattice::Point FinitePolicy::locate(int date, const BetaParams& state) const {
  if (date < 0 || date >= periods()) {
    throw UnreachableState("date " + std::to_string(date) + " outside horizon of " +
                           std::to_string(periods()) + " periods");
  }
  const Lattice lattice(spec_.prior, date);
  const auto p = lattice.locate(state);
  if (!p || p->depth() > date) {
    throw UnreachableState("state (" + std::to_string(state.alpha()) + ", " +
                           std::to_string(state.beta()) + ") is not reachable at date " +
                           std::to_string(date));
  }
  return *p;
}

const CutoffWage& FinitePolicy::at(int date, const BetaParams& state) const {
  const auto p = locate(date, state);
  return layers_[static_cast<std::size_t>(date)][Lattice::index(p)];
}

const CutoffWage& FinitePolicy::at(int date, int successes, int failures) const {
  if (date < 0 || date >= periods() || successes < 0 || failures < 0 ||
      successes + failures > date) {
    throw UnreachableState("lattice point not reachable at date " + std::to_string(date));
  }
  return layers_[static_cast<std::size_t>(date)][Lattice::index(successes, failures)];
}

const ValueTable& FinitePolicy::values(int date, int successes, int failures) const {
  if (!has_value_tables()) throw std::logic_error("FinitePolicy: value tables were not retained");
  (void)at(date, successes, failures);
  return values_[static_cast<std::size_t>(date)][Lattice::index(successes, failures)];
}

PolicyTable FinitePolicy::table() const {
  PolicyTable::Header h{HorizonKind::finite, spec_.prior, spec_.regime, spec_.prefs,
                        spec_.delta,         spec_.periods};
  return PolicyTable(std::move(h), layers_);
}

CutoffWage branch_wages(const FinitePolicy& policy, int date, std::span<const Outcome> history) {
  if (date < 0) throw std::invalid_argument("branch_wages: negative date");
  if (history.size() > static_cast<std::size_t>(date)) {
    throw std::invalid_argument("branch_wages: history of length " +
                                std::to_string(history.size()) + " cannot precede date " +
                                std::to_string(date));
  }
  BetaParams state = policy.prior();
  for (const Outcome y : history) state = update(state, y);
  return policy.at(date, state);
}

double exact_value_at(const FinitePolicy& policy, int date, double theta,
                      const BetaParams& state) {
  (void)policy.at(date, state);
  const Lattice lattice(policy.prior(), date);
  const auto p = *lattice.locate(state);
  std::vector<std::vector<CutoffWage>> layers;
  layers.reserve(static_cast<std::size_t>(policy.periods()));
  for (int t = 0; t < policy.periods(); ++t) {
    std::vector<CutoffWage> layer(Lattice::count(t));
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const auto q = Lattice::point(i);
      layer[i] = policy.at(t, q.successes, q.failures);
    }
    layers.push_back(std::move(layer));
  }
  return exact_value(layers, policy.spec(), date, p.successes, p.failures, theta);
}

double value_at(const FinitePolicy& policy, int date, double theta, const BetaParams& state) {
  (void)policy.at(date, state);
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("value_at: theta outside [0,1]");
  if (policy.has_value_tables()) {
    const Lattice lattice(policy.prior(), date);
    const auto p = *lattice.locate(state);
    return policy.values(date, p.successes, p.failures)(theta);
  }
  if (policy.periods() - date > kMaxExactRemaining) {
    throw std::logic_error("value_at: value tables not retained and too many periods remain");
  }
  return exact_value_at(policy, date, theta, state);
}

BranchValues branch_values(const FinitePolicy& policy, int date, double theta,
                           const BetaParams& state) {
  const CutoffWage cw = policy.at(date, state);
  const auto& spec = policy.spec();
  const double d = spec.delta;
  double up = 0.0;
  double down = 0.0;
  double stay = 0.0;
  if (date + 1 < policy.periods()) {
    up = value_at(policy, date + 1, theta, update(state, Outcome::success));
    down = value_at(policy, date + 1, theta, update(state, Outcome::failure));
    stay = value_at(policy, date + 1, theta, state);
  }
  return {theta + d * (theta * up + (1.0 - theta) * down), spec.prefs(cw.wage) + d * stay};
}

}  // namespace careers
