#include "careers/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "detail.hpp"
#include "careers/value_table.hpp"

namespace careers {

BeliefVector::BeliefVector(std::vector<double> grid, std::vector<double> mass)
    : grid_(std::move(grid)), mass_(std::move(mass)) {
  const std::size_t n = grid_.size();
  if (n == 0 || mass_.size() != n) {
    throw std::invalid_argument("BeliefVector: grid and mass must be non-empty and equally long");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(grid_[i] >= 0.0 && grid_[i] <= 1.0)) {
      throw std::invalid_argument("BeliefVector: grid values must lie in [0, 1]");
    }
    if (i > 0 && !(grid_[i] > grid_[i - 1])) {
      throw std::invalid_argument("BeliefVector: grid must be strictly increasing");
    }
    if (!(mass_[i] >= 0.0) || !std::isfinite(mass_[i])) {
      throw std::invalid_argument("BeliefVector: masses must be finite and non-negative");
    }
  }
  cell_lo_.resize(n);
  cell_hi_.resize(n);
  cum_mass_.assign(n + 1, 0.0);
  cum_moment_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cell_lo_[i] = i == 0 ? 0.0 : 0.5 * (grid_[i - 1] + grid_[i]);
    cell_hi_[i] = i + 1 == n ? 1.0 : 0.5 * (grid_[i] + grid_[i + 1]);
    cum_mass_[i + 1] = cum_mass_[i] + mass_[i];
    cum_moment_[i + 1] = cum_moment_[i] + mass_[i] * 0.5 * (cell_lo_[i] + cell_hi_[i]);
  }
  if (std::fabs(cum_mass_[n] - 1.0) > 1e-12) {
    throw std::invalid_argument("BeliefVector: masses must sum to 1 (got " +
                                std::to_string(cum_mass_[n]) + ")");
  }
}

BeliefVector BeliefVector::discretized_beta(const BetaParams& p, std::size_t points) {
  if (points < 2) throw std::invalid_argument("discretized_beta: need at least two points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  std::vector<double> mass(points);
  double below = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double hi = i + 1 == points ? 1.0 : 0.5 * (grid[i] + grid[i + 1]);
    const double cdf = hi >= 1.0 ? 1.0 : beta_cdf(p, hi);
    mass[i] = std::max(0.0, cdf - below);
    below = cdf;
    total += mass[i];
  }
  for (double& m : mass) m /= total;
  return BeliefVector(std::move(grid), std::move(mass));
}

bool BeliefVector::uniform() const noexcept {
  const std::size_t n = grid_.size();
  if (n < 2) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(grid_[i] - static_cast<double>(i) / static_cast<double>(n - 1)) > 1e-12) {
      return false;
    }
  }
  return true;
}

double BeliefVector::mean() const noexcept { return cum_moment_.back(); }

namespace {

void check_cut(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("BeliefVector: cutoff outside [0, 1]");
}

}  // namespace

double BeliefVector::mass_below(double c) const {
  check_cut(c);
  const auto it = std::upper_bound(cell_lo_.begin(), cell_lo_.end(), c);
  const auto j = static_cast<std::size_t>(it - cell_lo_.begin()) - 1;
  const double frac = std::clamp((c - cell_lo_[j]) / (cell_hi_[j] - cell_lo_[j]), 0.0, 1.0);
  return cum_mass_[j] + frac * mass_[j];
}

double BeliefVector::truncated_mean(double c) const {
  check_cut(c);
  const auto it = std::upper_bound(cell_lo_.begin(), cell_lo_.end(), c);
  const auto j = static_cast<std::size_t>(it - cell_lo_.begin()) - 1;
  const double frac = std::clamp((c - cell_lo_[j]) / (cell_hi_[j] - cell_lo_[j]), 0.0, 1.0);
  const double mass = cum_mass_[j] + frac * mass_[j];
  if (mass > 1e-300) {
    return (cum_moment_[j] + frac * mass_[j] * 0.5 * (cell_lo_[j] + c)) / mass;
  }
  const auto first = std::upper_bound(cum_mass_.begin(), cum_mass_.end(), 0.0);
  return cell_lo_[static_cast<std::size_t>(first - cum_mass_.begin()) - 1];
}

BeliefVector bayes_update(const BeliefVector& b, std::span<const double> likelihood) {
  if (likelihood.size() != b.size()) {
    throw std::invalid_argument("bayes_update: likelihood length does not match the grid");
  }
  std::vector<double> mass(b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double l = likelihood[i];
    if (!(l >= 0.0 && l <= 1.0)) {
      throw std::invalid_argument("bayes_update: likelihood values must lie in [0, 1]");
    }
    mass[i] = b.mass()[i] * l;
    total += mass[i];
  }
  if (!(total > 1e-300)) throw DegenerateUpdate("bayes_update: posterior normalizer is zero");
  for (double& m : mass) m /= total;
  return BeliefVector(std::vector<double>(b.grid().begin(), b.grid().end()), std::move(mass));
}

BeliefVector outcome_update(const BeliefVector& b, Outcome y) {
  std::vector<double> l(b.grid().begin(), b.grid().end());
  if (y == Outcome::failure) {
    for (double& x : l) x = 1.0 - x;
  }
  return bayes_update(b, l);
}

void validate(const SignalSpec& sig) {
  if (!(sig.phi >= 0.0 && sig.phi < 1.0)) throw std::domain_error("signal: phi must be in [0, 1)");
  if (!(sig.zbar > 0.0 && sig.zbar < 1.0)) throw std::domain_error("signal: zbar must be in (0, 1)");
}

BeliefVector firm_signal_update(const BeliefVector& b, const SignalSpec& sig, bool z) {
  validate(sig);
  std::vector<double> l(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double p = sig.p_one(b.grid()[i]);
    l[i] = z ? p : 1.0 - p;
  }
  return bayes_update(b, l);
}

void validate(const GridProblem& problem) {
  if (!problem.prior.uniform()) {
    throw std::invalid_argument("grid: prior must live on a uniform grid including 0 and 1");
  }
  validate(problem.signal);
  check_discount(problem.delta);
  if (problem.periods < 1) throw std::invalid_argument("grid: periods must be >= 1");
  if (problem.node_budget < 1) throw std::invalid_argument("grid: node_budget must be >= 1");
  if (!(problem.cutoff_options.tolerance > 0.0)) {
    throw std::invalid_argument("grid: cutoff tolerance must be positive");
  }
}

std::size_t grid_node_count(int periods, bool signal_informative) {
  std::size_t total = 0;
  for (int t = 0; t < periods; ++t) {
    const auto s = static_cast<std::size_t>(t);
    // With informative signals every period adds one count, so date t holds
    // the histories with exactly t counts.
    total += signal_informative ? (s + 1) * (s + 2) * (s + 3) / 6 : (s + 1) * (s + 2) / 2;
  }
  return total;
}

const GridNode& GridPolicy::at(int date, const GridNodeKey& key) const {
  if (date < 0 || date >= periods()) throw std::out_of_range("grid policy: date outside horizon");
  const auto& idx = index_[static_cast<std::size_t>(date)];
  const auto it = idx.find(key);
  if (it == idx.end()) throw std::out_of_range("grid policy: no node with this history");
  return dates_[static_cast<std::size_t>(date)][it->second];
}

std::size_t GridPolicy::node_count() const noexcept {
  std::size_t n = 0;
  for (const auto& d : dates_) n += d.size();
  return n;
}

namespace {

struct Children {
  std::size_t up, down, one, zero, stay;
};

class GridContinuation final : public ContinuationValues {
 public:
  GridContinuation(const std::vector<ValueTable>& next, const Children& c, const SignalSpec& sig,
                   bool informative)
      : next_(next), c_(c), sig_(sig), informative_(informative) {}

  double after_success(double theta) const override { return next_[c_.up](theta); }
  double after_failure(double theta) const override { return next_[c_.down](theta); }
  double after_employment(double theta) const override {
    if (!informative_) return next_[c_.stay](theta);
    const double p = sig_.p_one(theta);
    return p * next_[c_.one](theta) + (1.0 - p) * next_[c_.zero](theta);
  }

 private:
  const std::vector<ValueTable>& next_;
  Children c_;
  SignalSpec sig_;
  bool informative_;
};

std::vector<GridNodeKey> keys_at(int t, bool informative) {
  std::vector<GridNodeKey> keys;
  for (int s = informative ? t : 0; s <= t; ++s) {
    for (int k = 0; k <= s; ++k) {
      if (!informative) {
        keys.push_back({k, s - k, 0, 0});
        continue;
      }
      for (int f = 0; f <= s - k; ++f) {
        for (int a = 0; a <= s - k - f; ++a) keys.push_back({k, f, a, s - k - f - a});
      }
    }
  }
  return keys;
}

// Likelihood logs on the grid; a count of zero contributes nothing so that
// log(0) never meets a zero count.
struct LogTerms {
  std::vector<double> prior, success, failure, one, zero;
};

BeliefVector node_belief(const BeliefVector& prior, const LogTerms& lt, const GridNodeKey& key) {
  const std::size_t n = prior.size();
  std::vector<double> w(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double x = lt.prior[i];
    if (key.successes > 0) x += key.successes * lt.success[i];
    if (key.failures > 0) x += key.failures * lt.failure[i];
    if (key.signal_ones > 0) x += key.signal_ones * lt.one[i];
    if (key.signal_zeros > 0) x += key.signal_zeros * lt.zero[i];
    w[i] = x;
    top = std::max(top, x);
  }
  if (!std::isfinite(top)) throw DegenerateUpdate("grid: belief node has no mass");
  double total = 0.0;
  for (double& x : w) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : w) x /= total;
  return BeliefVector(std::vector<double>(prior.grid().begin(), prior.grid().end()), std::move(w));
}

}  // namespace

GridPolicy solve_grid(const GridProblem& problem) {
  validate(problem);
  const bool informative = problem.signal.phi > 0.0;
  const std::size_t total = grid_node_count(problem.periods, informative);
  if (total > problem.node_budget) {
    throw TreeTooLarge("grid: " + std::to_string(total) + " belief nodes exceed the budget of " +
                       std::to_string(problem.node_budget));
  }

  const BeliefVector& prior = problem.prior;
  const std::size_t n = prior.size();
  LogTerms lt;
  lt.prior.resize(n);
  lt.success.resize(n);
  lt.failure.resize(n);
  lt.one.resize(n);
  lt.zero.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = prior.grid()[i];
    const double p = problem.signal.p_one(th);
    lt.prior[i] = std::log(prior.mass()[i]);
    lt.success[i] = std::log(th);
    lt.failure[i] = std::log1p(-th);
    lt.one[i] = std::log(p);
    lt.zero[i] = std::log1p(-p);
  }

  GridPolicy policy;
  const auto T = static_cast<std::size_t>(problem.periods);
  policy.dates_.resize(T);
  policy.index_.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    const auto keys = keys_at(static_cast<int>(t), informative);
    auto& idx = policy.index_[t];
    for (std::size_t i = 0; i < keys.size(); ++i) idx.emplace(keys[i], i);
    policy.dates_[t].resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) policy.dates_[t][i].key = keys[i];
  }

  const double d = problem.delta;
  std::vector<ValueTable> next;
  const TerminalContinuation terminal;
  for (int t = problem.periods - 1; t >= 0; --t) {
    const auto tu = static_cast<std::size_t>(t);
    auto& nodes = policy.dates_[tu];
    std::vector<ValueTable> current(nodes.size(), ValueTable(n));
    const bool last = tu + 1 == T;
    const auto* next_index = last ? nullptr : &policy.index_[tu + 1];

    detail::parallel_for(nodes.size(), problem.threads, [&](std::size_t i) {
      GridNode& node = nodes[i];
      const GridNodeKey& key = node.key;
      const BeliefVector belief = node_belief(prior, lt, key);

      Children ch{};
      if (!last) {
        auto find = [&](GridNodeKey k) { return next_index->at(k); };
        ch.up = find({key.successes + 1, key.failures, key.signal_ones, key.signal_zeros});
        ch.down = find({key.successes, key.failures + 1, key.signal_ones, key.signal_zeros});
        if (!informative) ch.stay = find(key);
        if (informative) {
          ch.one = find({key.successes, key.failures, key.signal_ones + 1, key.signal_zeros});
          ch.zero = find({key.successes, key.failures, key.signal_ones, key.signal_zeros + 1});
        }
      }
      const GridContinuation cont(next, ch, problem.signal, informative);
      const ContinuationValues& cv = last ? static_cast<const ContinuationValues&>(terminal) : cont;

      CutoffWage cw;
      try {
        if (problem.regime == Regime::naive) {
          cw = solve_cutoff_fixed_wage(belief.mean(), cv, problem.prefs, d, problem.cutoff_options);
        } else {
          cw = solve_cutoff_pooled([&](double c) { return belief.truncated_mean(c); }, cv,
                                   problem.prefs, d, problem.cutoff_options);
        }
      } catch (const SolverError& e) {
        throw SolverError(std::string(e.what()) + " at date " + std::to_string(t) + ", node (" +
                          std::to_string(key.successes) + ", " + std::to_string(key.failures) +
                          ", " + std::to_string(key.signal_ones) + ", " +
                          std::to_string(key.signal_zeros) + ")");
      }
      node.policy = cw;
      node.belief_mean = belief.mean();
      node.employment_mass = belief.mass_below(cw.cutoff);

      auto& out = current[i];
      const double employ_now = problem.prefs(cw.wage);
      for (std::size_t j = 0; j < n; ++j) {
        const double th = out.theta(j);
        if (last) {
          out[j] = std::max(th, employ_now);
          continue;
        }
        const double self = th + d * (th * next[ch.up][j] + (1.0 - th) * next[ch.down][j]);
        double stay;
        if (informative) {
          const double p = problem.signal.p_one(th);
          stay = p * next[ch.one][j] + (1.0 - p) * next[ch.zero][j];
        } else {
          stay = next[ch.stay][j];
        }
        out[j] = std::max(self, employ_now + d * stay);
      }
    });
    next = std::move(current);
  }
  return policy;
}

}  // namespace careers
