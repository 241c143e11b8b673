// Acceptance run: one PASS/FAIL line per criterion.
//
//   careers_acceptance        all criteria
//   careers_acceptance 3 7    selected criteria
//
// Exit status 0 iff every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "careers/finite.hpp"
#include "careers/grid.hpp"
#include "careers/montecarlo.hpp"
#include "careers/stationary.hpp"
#include "support/properties.hpp"

using namespace careers;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAIL]");
    pass = pass && ok;
  }
};

std::string f(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

FinitePolicy three_period(Regime r) {
  FiniteHorizonSpec s;
  s.periods = 3;
  s.regime = r;
  s.representation = ValueRepresentation::exact;
  return solve_finite(s);
}

void within(Verdict& v, const char* label, double computed, double reference, double tol) {
  const double err = std::fabs(computed - reference);
  v.require(err <= tol, std::string(label) + f(" %.9f vs %.6g (err %.2e)", computed, reference, err));
}

Verdict terminal_naive() {
  Verdict v;
  const auto p = three_period(Regime::naive);
  const double closed[] = {std::sqrt(0.5), std::sqrt(2.0 / 3), std::sqrt(1.0 / 3)};
  const double printed[] = {0.707, 0.817, 0.577};
  const int succ[] = {0, 1, 0};
  const int fail[] = {0, 0, 1};
  const char* names[] = {"(1,1)", "(2,1)", "(1,2)"};
  for (int i = 0; i < 3; ++i) {
    const double c = p.at(2, succ[i], fail[i]).cutoff;
    within(v, (std::string(names[i]) + " closed form").c_str(), c, closed[i], 1e-9);
    within(v, (std::string(names[i]) + " printed").c_str(), c, printed[i], 5e-4);
  }
  return v;
}

Verdict terminal_sophisticated() {
  Verdict v;
  const auto p = three_period(Regime::sophisticated);
  within(v, "(1,1)", p.at(2, 0, 0).cutoff, 0.5, 1e-9);
  within(v, "(2,1)", p.at(2, 1, 0).cutoff, 2.0 / 3, 1e-9);
  within(v, "(1,2)", p.at(2, 0, 1).cutoff, 0.451, 2e-3);
  return v;
}

Verdict date_one_cutoffs() {
  Verdict v;
  within(v, "naive", three_period(Regime::naive).at(1, 0, 0).cutoff, 0.656, 3e-3);
  within(v, "sophisticated", three_period(Regime::sophisticated).at(1, 0, 0).cutoff, 0.42, 1e-2);
  return v;
}

Verdict date_one_wages() {
  Verdict v;
  const auto s = three_period(Regime::sophisticated);
  const auto n = three_period(Regime::naive);
  within(v, "sophisticated after success", s.at(1, 1, 0).wage, 0.407, 5e-3);
  within(v, "sophisticated after failure", s.at(1, 0, 1).wage, 0.177, 5e-3);
  within(v, "naive after success", n.at(1, 1, 0).wage, 2.0 / 3, 1e-12);
  within(v, "naive after failure", n.at(1, 0, 1).wage, 1.0 / 3, 1e-12);
  return v;
}

Verdict property_suite() {
  using namespace careers::testing;
  constexpr int kMin = 500;
  std::vector<PropertyResult> results{
      single_crossing(1, kMin),
      gap_decreasing_in_wage(2, kMin),
      truncated_mean_properties(3, kMin),
      regime_ordering(4, kMin),
      cutoffs_decreasing_in_delta(Regime::naive, 5, kMin),
      cutoffs_decreasing_in_delta(Regime::sophisticated, 6, kMin),
      cutoffs_decreasing_in_rho(Regime::naive, 7, kMin),
      cutoffs_decreasing_in_rho(Regime::sophisticated, 8, kMin),
      cutoffs_increasing_in_depth(Regime::naive, 9, kMin),
      cutoffs_increasing_in_depth(Regime::sophisticated, 10, kMin),
  };
  Verdict v;
  for (const auto& r : results) {
    std::printf("  %s: %d instances, %d violations%s%s\n", r.name.c_str(), r.instances, r.violations,
                r.violations ? "; first: " : "", r.first_violation.c_str());
    v.pass = v.pass && r.holds(kMin);
  }
  int total = 0, bad = 0;
  for (const auto& r : results) {
    total += r.instances;
    bad += r.holds(kMin) ? 0 : 1;
  }
  v.detail = std::to_string(results.size() - static_cast<std::size_t>(bad)) + "/" +
             std::to_string(results.size()) + " properties hold over " + std::to_string(total) +
             " instances";
  return v;
}

Verdict absorption() {
  Verdict v;
  for (auto r : {Regime::naive, Regime::sophisticated}) {
    LatticeSpec s;
    s.regime = r;
    s.delta = 0.9;
    s.max_depth = 20;
    s.theta_grid_size = 513;
    const auto sol = value_iterate(s);
    v.require(sol.converged, std::string(to_string(r)) + " policy converged");
    if (!sol.converged) continue;
    SimSpec sim;
    sim.n_paths = 10000;
    sim.horizon = 40;
    sim.seed = 20240601;
    sim.threads = 4;
    const auto trajs = simulate(sol.table(), sim);
    std::uint64_t leavers = 0, employed = 0;
    for (const auto& tr : trajs) {
      bool in = false;
      bool left = false;
      for (const auto& p : tr.periods) {
        if (in && p.action != Action::employment) left = true;
        in = in || p.action == Action::employment;
      }
      leavers += left;
      employed += in;
    }
    v.require(leavers == 0 && aggregate(trajs).employment_exits == 0,
              std::string(to_string(r)) + ": " + std::to_string(leavers) + " of " +
                  std::to_string(employed) + " employed paths left employment");
  }
  return v;
}

Verdict engine_cross_validation() {
  Verdict v;
  for (auto r : {Regime::naive, Regime::sophisticated}) {
    GridProblem g;
    g.regime = r;
    g.periods = 3;
    g.prior = BeliefVector::discretized_beta(BetaParams(1, 1), 2001);
    const auto grid = solve_grid(g);
    const auto beta = three_period(r);
    double worst = 0.0;
    const int nodes[][3] = {{2, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 0, 0}, {0, 0, 0}};
    for (const auto& n : nodes) {
      const double a = grid.at(n[0], {n[1], n[2], 0, 0}).policy.cutoff;
      const double b = beta.at(n[0], n[1], n[2]).cutoff;
      worst = std::max(worst, std::fabs(a - b));
    }
    v.require(worst <= 5e-3, std::string(to_string(r)) + f(" grid vs Beta max diff %.2e", worst));
  }
  for (auto r : {Regime::naive, Regime::sophisticated}) {
    std::string roots;
    bool decreasing = true;
    double prev = 2.0;
    for (double phi : {0.0, 0.2, 0.4, 0.6, 0.8}) {
      GridProblem g;
      g.regime = r;
      g.periods = 3;
      g.signal.phi = phi;
      const double c = solve_grid(g).root().policy.cutoff;
      roots += f(" %.6f", c);
      decreasing = decreasing && c <= prev + 1e-9;
      prev = c;
    }
    v.require(decreasing, std::string(to_string(r)) + " root cutoff over phi 0..0.8:" + roots);
  }
  return v;
}

std::string finite_vs_stationary(Regime r, double& diff, bool& converged) {
  FiniteHorizonSpec f60;
  f60.periods = 60;
  f60.delta = 0.9;
  f60.regime = r;
  f60.theta_grid_size = 1025;
  f60.retain_values = false;
  const double finite_root = solve_finite(f60).at(0, 0, 0).cutoff;
  LatticeSpec s;
  s.max_depth = 60;
  s.delta = 0.9;
  s.regime = r;
  s.theta_grid_size = 1025;
  const auto sol = value_iterate(s);
  const double stationary_root = sol.cutoffs[0].cutoff;
  diff = std::fabs(finite_root - stationary_root);
  converged = sol.converged;
  return std::string(to_string(r)) + f(" finite %.8f, stationary %.8f (diff %.1e, ", finite_root,
                                       stationary_root, diff) +
         std::to_string(sol.sweeps_used) + " sweeps)";
}

Verdict finite_meets_stationary() {
  Verdict v;
  double diff = 0.0;
  bool converged = false;
  const std::string what = finite_vs_stationary(Regime::naive, diff, converged);
  v.require(converged && diff <= 1e-4, what);
  return v;
}

// The sophisticated lattice needs about ten times the sweeps of the naive one
// at this depth, so it is reported after the timed check.
void sophisticated_consistency() {
  const auto start = std::chrono::steady_clock::now();
  double diff = 0.0;
  bool converged = false;
  const std::string what = finite_vs_stationary(Regime::sophisticated, diff, converged);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("  informational: %s, %s within 1e-4, %.1f s\n", what.c_str(),
              converged && diff <= 1e-4 ? "agrees" : "does not agree", secs);
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
  std::function<void()> after = {};
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "terminal naive cutoffs", 0.1, terminal_naive},
      {2, "terminal sophisticated cutoffs", 0.1, terminal_sophisticated},
      {3, "date-1 cutoffs", 1.0, date_one_cutoffs},
      {4, "date-1 wages", 1.0, date_one_wages},
      {5, "property suite", 60.0, property_suite},
      {6, "absorption in simulation", 5.0, absorption},
      {7, "grid engine cross-validation", 30.0, engine_cross_validation},
      {8, "finite/stationary consistency", 10.0, finite_meets_stationary, sophisticated_consistency},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > static_cast<int>(all.size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
      return 2;
    }
    selected.push_back(id);
  }
  if (selected.empty()) {
    for (const auto& c : all) selected.push_back(c.id);
  }

  bool ok = true;
  for (const int id : selected) {
    const auto& c = all[static_cast<std::size_t>(id - 1)];
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = v.pass && in_time;
    std::printf("criterion %d (%s): %s  [%.3f s of %.1f s%s]  %s\n", c.id, c.name, pass ? "PASS" : "FAIL",
                secs, c.budget_seconds, in_time ? "" : ", over budget", v.detail.c_str());
    std::fflush(stdout);
    if (c.after) c.after();
    ok = ok && pass;
  }
  return ok ? 0 : 1;
}
