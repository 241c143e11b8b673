#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "careers/app.hpp"
#include "careers/finite.hpp"
#include "careers/grid.hpp"
#include "careers/io.hpp"
#include "careers/montecarlo.hpp"
#include "careers/stationary.hpp"

namespace py = pybind11;
using namespace careers;

namespace {

Regime regime_arg(const std::string& s) {
  const auto r = parse_regime(s);
  if (!r) throw py::value_error("regime must be 'naive' or 'sophisticated'");
  return *r;
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(careers, m) {
  m.doc() = "Cutoff policies, wages and simulations for the public/hidden employment model";

  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<UnreachableState>(m, "UnreachableState", PyExc_IndexError);
  py::register_exception<TreeTooLarge>(m, "TreeTooLarge", PyExc_RuntimeError);
  py::register_exception<UnconvergedPolicy>(m, "UnconvergedPolicy", PyExc_RuntimeError);
  py::register_exception<io::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("posterior_mean",
        [](double a, double b) { return posterior_mean(BetaParams(a, b)); }, py::arg("alpha"),
        py::arg("beta"));
  m.def("truncated_mean",
        [](double a, double b, double c) { return truncated_mean(BetaParams(a, b), c); },
        py::arg("alpha"), py::arg("beta"), py::arg("cutoff"));
  m.def("regularized_incomplete_beta",
        [](double a, double b, double x) { return regularized_incomplete_beta(x, a, b); },
        py::arg("alpha"), py::arg("beta"), py::arg("x"));

  m.def(
      "static_cutoff",
      [](double a, double b, const std::string& regime, double rho, double delta) {
        const CutoffWage cw =
            static_cutoff(BetaParams(a, b), regime_arg(regime), Preferences::crra(rho), delta);
        return py::make_tuple(cw.cutoff, cw.wage);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("regime") = "naive", py::arg("rho") = 0.5,
      py::arg("delta") = 0.95, "Last-period (cutoff, wage) at a state.");

  py::class_<FinitePolicy>(m, "FinitePolicy")
      .def_property_readonly("periods", &FinitePolicy::periods)
      .def(
          "at",
          [](const FinitePolicy& p, int date, int successes, int failures) {
            const CutoffWage cw = p.at(date, successes, failures);
            return py::make_tuple(cw.cutoff, cw.wage);
          },
          py::arg("date"), py::arg("successes"), py::arg("failures"),
          "(cutoff, wage) at a date after the given numbers of public successes and failures.");

  m.def(
      "solve_finite",
      [](int periods, const std::string& regime, double delta, double rho, double alpha,
         double beta, std::size_t theta_grid_size, bool exact) {
        FiniteHorizonSpec s;
        s.periods = periods;
        s.regime = regime_arg(regime);
        s.delta = delta;
        s.prefs = Preferences::crra(rho);
        s.prior = BetaParams(alpha, beta);
        s.theta_grid_size = theta_grid_size;
        s.representation = exact ? ValueRepresentation::exact : ValueRepresentation::grid;
        s.retain_values = false;
        py::gil_scoped_release release;
        return solve_finite(s);
      },
      py::arg("periods"), py::arg("regime") = "naive", py::arg("delta") = 0.95,
      py::arg("rho") = 0.5, py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
      py::arg("theta_grid_size") = 4097, py::arg("exact") = false);

  m.def(
      "solve_stationary",
      [](int max_depth, const std::string& regime, double delta, double rho, double alpha,
         double beta, std::size_t theta_grid_size, double tolerance, int max_sweeps) {
        LatticeSpec s;
        s.max_depth = max_depth;
        s.regime = regime_arg(regime);
        s.delta = delta;
        s.prefs = Preferences::crra(rho);
        s.prior = BetaParams(alpha, beta);
        s.theta_grid_size = theta_grid_size;
        s.tolerance = tolerance;
        s.max_sweeps = max_sweeps;
        StationarySolution sol = [&] {
          py::gil_scoped_release release;
          return value_iterate(s);
        }();
        py::dict cutoffs;
        for (std::size_t i = 0; i < sol.cutoffs.size(); ++i) {
          const auto p = Lattice::point(i);
          cutoffs[py::make_tuple(p.successes, p.failures)] =
              py::make_tuple(sol.cutoffs[i].cutoff, sol.cutoffs[i].wage);
        }
        py::dict out;
        out["converged"] = sol.converged;
        out["sweeps"] = sol.sweeps_used;
        out["residual"] = sol.sup_norm_residual;
        out["cutoffs"] = cutoffs;
        return out;
      },
      py::arg("max_depth") = 12, py::arg("regime") = "naive", py::arg("delta") = 0.95,
      py::arg("rho") = 0.5, py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
      py::arg("theta_grid_size") = 1025, py::arg("tolerance") = 1e-10,
      py::arg("max_sweeps") = 10000,
      "Value iteration; cutoffs keyed by (successes, failures).");

  m.def(
      "solve_grid",
      [](int periods, const std::string& regime, double phi, double zbar, double delta, double rho,
         std::size_t points) {
        GridProblem g;
        g.periods = periods;
        g.regime = regime_arg(regime);
        g.signal = {phi, zbar};
        g.delta = delta;
        g.prefs = Preferences::crra(rho);
        g.prior = BeliefVector::discretized_beta(BetaParams(1.0, 1.0), points);
        const GridPolicy policy = [&] {
          py::gil_scoped_release release;
          return solve_grid(g);
        }();
        return json_to_py(io::to_json(policy));
      },
      py::arg("periods") = 3, py::arg("regime") = "naive", py::arg("phi") = 0.0,
      py::arg("zbar") = 0.5, py::arg("delta") = 0.95, py::arg("rho") = 0.5,
      py::arg("points") = 2001, "Belief-grid backward induction from a uniform prior.");

  m.def(
      "simulate",
      [](const FinitePolicy& policy, std::size_t n_paths, int horizon, std::uint64_t seed,
         std::optional<double> theta) {
        SimSpec s;
        s.n_paths = n_paths;
        s.horizon = horizon;
        s.seed = seed;
        if (theta) s.theta = ThetaSource::fixed(*theta);
        const PolicyTable table = policy.table();
        Summary summary = [&] {
          py::gil_scoped_release release;
          return aggregate(simulate(table, s));
        }();
        return json_to_py(io::to_json(summary));
      },
      py::arg("policy"), py::arg("n_paths") = 1000, py::arg("horizon") = 1,
      py::arg("seed") = 0, py::arg("theta") = py::none(),
      "Simulates under a finite policy and returns the aggregate summary.");

  m.def("reproduction_rows", [] {
    py::list rows;
    for (const auto& r : app::reproduction_rows()) {
      py::dict d;
      d["label"] = r.label;
      d["computed"] = r.computed;
      d["reference"] = r.reference;
      d["tolerance"] = r.tolerance;
      d["pass"] = r.pass();
      rows.append(d);
    }
    return rows;
  });

  m.def(
      "config_hash",
      [](const std::string& text) { return io::config_hash(io::parse_config_text(text)); },
      py::arg("config_json"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"careers"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = app::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");
}
