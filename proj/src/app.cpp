#include "careers/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "careers/io.hpp"

namespace careers::app {

namespace fs = std::filesystem;
using nlohmann::json;

double ReproRow::abs_error() const { return std::fabs(computed - reference); }

std::vector<ReproRow> reproduction_rows() {
  FiniteHorizonSpec spec;
  spec.periods = 3;
  spec.prior = BetaParams(1.0, 1.0);
  spec.delta = 0.95;
  spec.prefs = Preferences::crra(0.5);
  spec.representation = ValueRepresentation::exact;
  spec.regime = Regime::naive;
  const FinitePolicy naive = solve_finite(spec);
  spec.regime = Regime::sophisticated;
  const FinitePolicy soph = solve_finite(spec);

  return {
      {"naive cutoff, date 2, state (1,1)", naive.at(2, 0, 0).cutoff, 0.707, 5e-4},
      {"naive cutoff, date 2, state (2,1)", naive.at(2, 1, 0).cutoff, 0.817, 5e-4},
      {"naive cutoff, date 2, state (1,2)", naive.at(2, 0, 1).cutoff, 0.577, 5e-4},
      {"sophisticated cutoff, date 2, state (1,1)", soph.at(2, 0, 0).cutoff, 0.5, 1e-9},
      {"sophisticated cutoff, date 2, state (2,1)", soph.at(2, 1, 0).cutoff, 2.0 / 3.0, 1e-9},
      {"sophisticated cutoff, date 2, state (1,2)", soph.at(2, 0, 1).cutoff, 0.451, 2e-3},
      {"naive cutoff, date 1, state (1,1)", naive.at(1, 0, 0).cutoff, 0.656, 3e-3},
      {"sophisticated cutoff, date 1, state (1,1)", soph.at(1, 0, 0).cutoff, 0.42, 1e-2},
      {"sophisticated wage, date 1, after success", soph.at(1, 1, 0).wage, 0.407, 5e-3},
      {"sophisticated wage, date 1, after failure", soph.at(1, 0, 1).wage, 0.177, 5e-3},
      {"naive wage, date 1, after success", naive.at(1, 1, 0).wage, 2.0 / 3.0, 1e-12},
      {"naive wage, date 1, after failure", naive.at(1, 0, 1).wage, 1.0 / 3.0, 1e-12},
  };
}

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct Context {
  io::RunConfig cfg;
  fs::path dir;
  io::Provenance provenance;
  bool quiet;
  std::ostream& out;
  std::ostream& err;
};

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw io::ConfigError("--out", "cannot write " + (dir / name).string());
  return os;
}

void write_json(const fs::path& dir, const std::string& name, const json& j) {
  auto os = open_output(dir, name);
  os << j.dump(2) << '\n';
}

Context make_context(const Options& o, std::ostream& out, std::ostream& err, bool with_seed) {
  if (o.config.empty()) throw io::ConfigError("--config", "required for this command");
  io::RunConfig cfg = io::load_config(o.config);
  if (!o.out.empty()) cfg.output.dir = o.out;
  if (!o.format.empty()) cfg.output.format = *io::parse_format(o.format);
  if (o.seed) cfg.simulate.seed = *o.seed;
  io::Provenance prov{io::config_hash(cfg), std::nullopt};
  if (with_seed) prov.seed = cfg.simulate.seed;
  return Context{cfg, fs::path(cfg.output.dir), prov, o.quiet, out, err};
}

std::string fmt(double x, const char* spec = "%.5f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  const auto rows = reproduction_rows();
  bool all = true;
  for (const auto& r : rows) all = all && r.pass();
  if (!o.quiet) {
    for (const auto& r : rows) {
      out << r.label << ": computed " << fmt(r.computed) << ", reference " << fmt(r.reference, "%.6g")
          << ", abs err " << fmt(r.abs_error(), "%.2e") << ", tol " << fmt(r.tolerance, "%.0e")
          << ", " << (r.pass() ? "PASS" : "FAIL") << '\n';
    }
    out << (all ? "all rows PASS" : "some rows FAIL") << '\n';
  }
  if (!o.out.empty()) {
    const fs::path dir(o.out);
    if (o.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"label", r.label},
                       {"computed", r.computed},
                       {"reference", r.reference},
                       {"abs_error", r.abs_error()},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass()}});
      }
      write_json(dir, "reproduce.json", arr);
    } else {
      auto os = open_output(dir, "reproduce.csv");
      os << "label,computed,reference,abs_error,tolerance,pass\n";
      for (const auto& r : rows) {
        os << '"' << r.label << "\"," << io::format_double(r.computed) << ','
           << io::format_double(r.reference) << ',' << io::format_double(r.abs_error()) << ','
           << io::format_double(r.tolerance) << ',' << (r.pass() ? "true" : "false") << '\n';
      }
    }
  }
  return all ? kOk : kAcceptanceFail;
}

int cmd_solve(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const bool csv = cfg.output.format == io::Format::csv;
  switch (cfg.mode) {
    case io::Mode::finite: {
      const FinitePolicy policy = solve_finite(io::finite_spec(cfg));
      const PolicyTable table = policy.table();
      write_json(ctx.dir, "policy.json", io::to_json(table));
      if (csv) {
        auto os = open_output(ctx.dir, "policy.csv");
        io::write_policy_csv(os, table, ctx.provenance);
      }
      if (!ctx.quiet) {
        const auto root = policy.at(0, 0, 0);
        ctx.out << "finite horizon, " << policy.periods() << " periods, " << to_string(policy.regime())
                << ": root cutoff " << fmt(root.cutoff, "%.8f") << ", wage "
                << fmt(root.wage, "%.8f") << '\n';
      }
      return kOk;
    }
    case io::Mode::stationary: {
      const StationarySolution sol = value_iterate(io::lattice_spec(cfg));
      const PolicyTable table = sol.table();
      write_json(ctx.dir, "policy.json", io::to_json(table));
      write_json(ctx.dir, "report.json",
                 {{"config_hash", ctx.provenance.config_hash},
                  {"converged", sol.converged},
                  {"sweeps", sol.sweeps_used},
                  {"residual", sol.sup_norm_residual}});
      if (csv) {
        auto os = open_output(ctx.dir, "stationary.csv");
        io::write_policy_csv(os, table, ctx.provenance);
      }
      if (!sol.converged) {
        ctx.err << "stationary solve did not converge: residual " << fmt(sol.sup_norm_residual, "%.3e")
                << " after " << sol.sweeps_used << " sweeps\n";
        return kSolverFailure;
      }
      if (!ctx.quiet) {
        ctx.out << "stationary, depth " << cfg.stationary.max_depth << ", "
                << to_string(cfg.model.regime) << ": converged in " << sol.sweeps_used
                << " sweeps (residual " << fmt(sol.sup_norm_residual, "%.3e") << "), root cutoff "
                << fmt(sol.cutoffs.front().cutoff, "%.8f") << '\n';
      }
      return kOk;
    }
    case io::Mode::grid: {
      const GridPolicy g = solve_grid(io::grid_problem(cfg));
      if (csv) {
        auto os = open_output(ctx.dir, "grid_policy.csv");
        io::write_grid_csv(os, g, cfg.model.regime, ctx.provenance);
      } else {
        json j = io::to_json(g);
        j["config_hash"] = ctx.provenance.config_hash;
        write_json(ctx.dir, "grid_policy.json", j);
      }
      if (!ctx.quiet) {
        ctx.out << "grid, " << g.periods() << " periods, phi " << cfg.grid.phi << ", "
                << g.node_count() << " nodes: root cutoff " << fmt(g.root().policy.cutoff, "%.8f")
                << '\n';
      }
      return kOk;
    }
  }
  return kOk;
}

PolicyTable simulation_policy(const io::RunConfig& cfg) {
  if (cfg.simulate.policy_file) return io::load_policy(*cfg.simulate.policy_file);
  switch (cfg.mode) {
    case io::Mode::finite:
      return solve_finite(io::finite_spec(cfg)).table();
    case io::Mode::stationary:
      return value_iterate(io::lattice_spec(cfg)).table();
    case io::Mode::grid:
      break;
  }
  throw io::ConfigError("mode", "simulate needs a finite or stationary policy (or simulate.policy_file)");
}

int cmd_simulate(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const PolicyTable policy = simulation_policy(cfg);
  const auto trajs = simulate(policy, io::sim_spec(cfg));
  const Summary summary = aggregate(trajs);
  json sj = io::to_json(summary);
  sj["config_hash"] = ctx.provenance.config_hash;
  sj["seed"] = cfg.simulate.seed;
  write_json(ctx.dir, "summary.json", sj);
  if (cfg.output.format == io::Format::csv) {
    auto os = open_output(ctx.dir, "trajectories.csv");
    io::write_trajectories_csv(os, trajs, ctx.provenance);
    auto hz = open_output(ctx.dir, "hazard.csv");
    io::write_hazard_csv(hz, summary, ctx.provenance);
  } else {
    write_json(ctx.dir, "trajectories.json",
               {{"config_hash", ctx.provenance.config_hash},
                {"seed", cfg.simulate.seed},
                {"trajectories", io::to_json(std::span<const Trajectory>(trajs))}});
  }
  if (!ctx.quiet) {
    ctx.out << "simulated " << summary.paths << " paths over " << cfg.simulate.horizon
            << " periods (seed " << cfg.simulate.seed << "): " << summary.never_employed
            << " never employed, " << summary.employment_exits << " left employment\n";
    for (std::size_t r = 0; r < summary.hazard.size(); ++r) {
      ctx.out << "  hazard after " << r << " trailing failures: " << summary.hazard[r].entries << "/"
              << summary.hazard[r].at_risk << '\n';
    }
  }
  return kOk;
}

// Cutoffs at every state shared by consecutive sweep points must not rise.
std::string monotonicity_verdict(SweepParameter parameter, std::vector<SweepPoint> points) {
  if (parameter == SweepParameter::depth) return "monotonicity: not assessed for depth sweeps";
  std::erase_if(points, [](const SweepPoint& p) { return !p.table || !p.error.empty(); });
  std::sort(points.begin(), points.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return a.value < b.value; });
  const std::string head =
      "monotonicity: cutoffs weakly decreasing in " + std::string(to_string(parameter)) + ": ";
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& lo = points[i - 1].table->layers().front();
    const auto& hi = points[i].table->layers().front();
    const std::size_t n = std::min(lo.size(), hi.size());
    for (std::size_t s = 0; s < n; ++s) {
      if (hi[s].cutoff > lo[s].cutoff + 1e-9) {
        const auto p = Lattice::point(s);
        return head + "FAIL (state +" + std::to_string(p.successes) + "/-" +
               std::to_string(p.failures) + ", " + fmt(points[i - 1].value, "%g") + " -> " +
               fmt(points[i].value, "%g") + ": " + fmt(lo[s].cutoff, "%.6f") + " -> " +
               fmt(hi[s].cutoff, "%.6f") + ")";
      }
    }
  }
  return head + "PASS";
}

int cmd_sweep(Context& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.sweep.values.empty()) throw io::ConfigError("sweep.values", "must not be empty");
  const auto points = sweep(io::lattice_spec(cfg), cfg.sweep.parameter, cfg.sweep.values);
  bool failed = false;
  for (const auto& p : points) {
    if (!p.error.empty()) {
      failed = true;
      ctx.err << to_string(cfg.sweep.parameter) << " = " << p.value << ": " << p.error << '\n';
    }
  }
  if (cfg.output.format == io::Format::csv) {
    auto os = open_output(ctx.dir, "sweep.csv");
    io::write_sweep_csv(os, cfg.sweep.parameter, points, ctx.provenance);
  } else {
    json arr = json::array();
    for (const auto& p : points) {
      arr.push_back({{"value", p.value},
                     {"sweeps", p.sweeps_used},
                     {"error", p.error},
                     {"policy", p.table ? io::to_json(*p.table) : json(nullptr)}});
    }
    write_json(ctx.dir, "sweep.json",
               {{"config_hash", ctx.provenance.config_hash},
                {"parameter", to_string(cfg.sweep.parameter)},
                {"points", arr}});
  }
  if (!ctx.quiet) {
    for (const auto& p : points) {
      if (!p.table) continue;
      ctx.out << to_string(cfg.sweep.parameter) << " = " << p.value << ": root cutoff "
              << fmt(p.table->layers().front().front().cutoff, "%.8f") << " (" << p.sweeps_used
              << " sweeps)\n";
    }
  }
  ctx.out << monotonicity_verdict(cfg.sweep.parameter, points) << '\n';
  return failed ? kSolverFailure : kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App cli("Career choice under public and hidden employment: solvers and simulator",
               "careers");
  cli.require_subcommand(1);
  Options o;
  cli.add_option("--config", o.config, "JSON run configuration");
  cli.add_option("--out", o.out, "Output directory");
  cli.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cli.add_option("--seed", o.seed, "Simulation seed (simulate only)");
  cli.add_flag("--quiet", o.quiet, "Suppress the console report");
  auto* reproduce = cli.add_subcommand("reproduce", "Three-period reference numbers")->fallthrough();
  auto* solve = cli.add_subcommand("solve", "Solve the configured model")->fallthrough();
  auto* simulate_cmd = cli.add_subcommand("simulate", "Simulate careers under a policy")->fallthrough();
  auto* sweep_cmd = cli.add_subcommand("sweep", "Stationary solves over a parameter")->fallthrough();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return cli.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    cli.exit(e, out, err);
    return kValidation;
  }

  try {
    if (reproduce->parsed()) return cmd_reproduce(o, out);
    if (o.seed && !simulate_cmd->parsed()) {
      throw io::ConfigError("--seed", "only valid with simulate");
    }
    Context ctx = make_context(o, out, err, simulate_cmd->parsed());
    if (solve->parsed()) return cmd_solve(ctx);
    if (simulate_cmd->parsed()) return cmd_simulate(ctx);
    if (sweep_cmd->parsed()) return cmd_sweep(ctx);
  } catch (const io::ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kValidation;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const TreeTooLarge& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const UnconvergedPolicy& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const DegenerateUpdate& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const fs::filesystem_error& e) {
    err << "output error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}

}  // namespace careers::app
