#include "careers/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <tuple>

#include "detail.hpp"

namespace careers {

std::string_view to_string(Action a) noexcept {
  return a == Action::self_employment ? "S" : "E";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double draw_beta(std::mt19937_64& gen, const BetaParams& p) {
  if (p.alpha() == 1.0 && p.beta() == 1.0) return uniform01(gen);
  std::gamma_distribution<double> ga(p.alpha(), 1.0);
  std::gamma_distribution<double> gb(p.beta(), 1.0);
  const double x = ga(gen);
  const double y = gb(gen);
  return x / (x + y);
}

// Remembers lookups per worker; beyond-cap stationary lookups solve a cutoff.
class CachedPolicy {
 public:
  explicit CachedPolicy(const PolicyTable& table) : table_(table) {}

  CutoffWage operator()(int date, const BetaParams& state) {
    const int key_date = table_.kind() == HorizonKind::finite ? date : 0;
    const auto key = std::make_tuple(key_date, state.alpha(), state.beta());
    const auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const CutoffWage cw = table_.lookup(date, state);
    cache_.emplace(key, cw);
    return cw;
  }

 private:
  const PolicyTable& table_;
  std::map<std::tuple<int, double, double>, CutoffWage> cache_;
};

Trajectory simulate_path(CachedPolicy& policy, const PolicyTable& table, const SimSpec& spec,
                         std::uint64_t path) {
  std::mt19937_64 gen(path_seed(spec.seed, path));
  const double theta =
      spec.theta.kind == ThetaSource::Kind::fixed ? spec.theta.value : draw_beta(gen, table.prior());
  Trajectory tr{path, theta, {}};
  tr.periods.reserve(static_cast<std::size_t>(spec.horizon));
  BetaParams state = table.prior();
  for (int t = 0; t < spec.horizon; ++t) {
    const CutoffWage cw = policy(t, state);
    PeriodRecord rec{t, state, Action::employment, std::nullopt, std::nullopt, cw.wage, 0.0};
    if (theta <= cw.cutoff) {
      rec.wage = cw.wage;
      rec.utility = table.prefs()(cw.wage);
    } else {
      rec.action = Action::self_employment;
      const Outcome y = uniform01(gen) < theta ? Outcome::success : Outcome::failure;
      rec.outcome = y;
      rec.utility = y == Outcome::success ? 1.0 : 0.0;
      state = update(state, y);
    }
    tr.periods.push_back(rec);
  }
  return tr;
}

}  // namespace

std::uint64_t path_seed(std::uint64_t seed, std::uint64_t path) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(path + 0x632be59bd9b4e019ULL));
}

std::vector<Trajectory> simulate(const PolicyTable& policy, const SimSpec& spec) {
  if (spec.n_paths < 1) throw std::invalid_argument("simulate: n_paths must be >= 1");
  if (spec.horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
  if (spec.theta.kind == ThetaSource::Kind::fixed &&
      !(spec.theta.value >= 0.0 && spec.theta.value <= 1.0)) {
    throw std::invalid_argument("simulate: fixed theta must lie in [0, 1]");
  }
  if (!policy.converged()) {
    throw UnconvergedPolicy("simulate: policy did not converge (residual " +
                            std::to_string(policy.header().residual) + ")");
  }
  if (policy.kind() == HorizonKind::finite && spec.horizon > policy.extent()) {
    throw std::invalid_argument("simulate: horizon " + std::to_string(spec.horizon) +
                                " exceeds the policy's " + std::to_string(policy.extent()) +
                                " periods");
  }

  std::vector<Trajectory> out(spec.n_paths);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(spec.threads, spec.n_paths));
  detail::parallel_for(chunks, spec.threads, [&](std::size_t c) {
    CachedPolicy cached(policy);
    const std::size_t begin = spec.n_paths * c / chunks;
    const std::size_t end = spec.n_paths * (c + 1) / chunks;
    for (std::size_t i = begin; i < end; ++i) out[i] = simulate_path(cached, policy, spec, i);
  });
  return out;
}

namespace {

void add(MeanCell& into, const MeanCell& from) {
  into.sum += from.sum;
  into.count += from.count;
}

template <class T>
void grow(std::vector<T>& v, std::size_t n) {
  if (v.size() < n) v.resize(n);
}

}  // namespace

void Summary::merge(const Summary& other) {
  paths += other.paths;
  grow(dates, other.dates.size());
  for (std::size_t i = 0; i < other.dates.size(); ++i) {
    dates[i].paths += other.dates[i].paths;
    dates[i].self_employed += other.dates[i].self_employed;
  }
  for (const auto& [t, n] : other.absorption_time) absorption_time[t] += n;
  never_employed += other.never_employed;
  employment_exits += other.employment_exits;
  grow(hazard, other.hazard.size());
  for (std::size_t i = 0; i < other.hazard.size(); ++i) {
    hazard[i].at_risk += other.hazard[i].at_risk;
    hazard[i].entries += other.hazard[i].entries;
  }
  for (const auto& [k, cell] : other.wage_by_state) add(wage_by_state[k], cell);
  grow(offer_gap, other.offer_gap.size());
  for (std::size_t i = 0; i < other.offer_gap.size(); ++i) {
    add(offer_gap[i].after_success, other.offer_gap[i].after_success);
    add(offer_gap[i].after_failure, other.offer_gap[i].after_failure);
  }
}

Summary aggregate(std::span<const Trajectory> trajs) {
  if (trajs.empty()) throw std::invalid_argument("aggregate: no trajectories");
  Summary s;
  for (const Trajectory& tr : trajs) {
    ++s.paths;
    const auto n = tr.periods.size();
    grow(s.dates, n);
    grow(s.offer_gap, n);
    std::optional<int> first_employment;
    bool exited = false;
    int failure_run = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const PeriodRecord& r = tr.periods[t];
      ++s.dates[t].paths;
      const bool employed = r.action == Action::employment;
      if (!employed) ++s.dates[t].self_employed;
      if (t > 0) {
        const PeriodRecord& prev = tr.periods[t - 1];
        if (prev.action == Action::self_employment) {
          grow(s.hazard, static_cast<std::size_t>(failure_run) + 1);
          auto& cell = s.hazard[static_cast<std::size_t>(failure_run)];
          ++cell.at_risk;
          if (employed) ++cell.entries;
          auto& gap = *prev.outcome == Outcome::success ? s.offer_gap[t].after_success
                                                        : s.offer_gap[t].after_failure;
          gap.sum += r.offer;
          ++gap.count;
        } else if (!employed) {
          exited = true;
        }
      }
      if (employed) {
        if (!first_employment) first_employment = r.date;
        auto& cell = s.wage_by_state[{r.state.alpha(), r.state.beta()}];
        cell.sum += *r.wage;
        ++cell.count;
      } else {
        failure_run = *r.outcome == Outcome::failure ? failure_run + 1 : 0;
      }
    }
    if (first_employment) {
      ++s.absorption_time[*first_employment];
    } else {
      ++s.never_employed;
    }
    if (exited) ++s.employment_exits;
  }
  return s;
}

}  // namespace careers
