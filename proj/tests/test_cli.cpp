#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "careers/app.hpp"

namespace fs = std::filesystem;
using careers::app::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::vector<const char*> argv{"careers"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static std::atomic<int> counter{0};
  const auto dir = fs::temp_directory_path() /
                   ("careers-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const auto p = dir / "config.json";
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string second_line(const std::string& text) {
  const auto a = text.find('\n');
  return text.substr(a + 1, text.find('\n', a + 1) - a - 1);
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve"}).code == 1);
  CHECK(run({"solve", "--config", "/nonexistent/config.json"}).code == 1);
  CHECK(run({"solve", "--format", "xml", "--config", "x"}).code == 1);
}

TEST_CASE("reproduce prints one row per reference value") {
  const auto r = run({"reproduce"});
  CHECK((r.code == 0 || r.code == 3));
  int rows = 0;
  for (std::size_t p = r.out.find("computed"); p != std::string::npos; p = r.out.find("computed", p + 1)) ++rows;
  CHECK(rows == 12);
  CHECK(r.out.find("naive cutoff, date 2, state (1,1): computed 0.70711") != std::string::npos);
  bool any_fail = false;
  for (const auto& row : careers::app::reproduction_rows()) any_fail = any_fail || !row.pass();
  CHECK(r.code == (any_fail ? 3 : 0));

  const auto dir = scratch();
  CHECK(run({"reproduce", "--quiet", "--out", dir.string()}).code == r.code);
  CHECK(fs::exists(dir / "reproduce.csv"));
}

TEST_CASE("finite solve writes the policy table") {
  const auto dir = scratch();
  const auto cfg = write_config(dir, R"({"schema_version": 1, "finite": {"periods": 3}})");
  const auto r = run({"solve", "--config", cfg, "--out", (dir / "o").string(), "--quiet"});
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "o" / "policy.csv");
  CHECK(csv.rfind("# config_hash=", 0) == 0);
  CHECK(second_line(csv) == "date,alpha,beta,regime,cutoff,wage");
  CHECK(fs::exists(dir / "o" / "policy.json"));

  CHECK(run({"solve", "--config", cfg, "--seed", "4"}).code == 1);
}

TEST_CASE("unconverged stationary solve exits 2 and reports the residual") {
  const auto dir = scratch();
  const auto cfg = write_config(dir, R"({"schema_version": 1, "mode": "stationary",
    "stationary": {"max_depth": 6, "theta_grid_size": 257, "max_sweeps": 2}})");
  const auto r = run({"solve", "--config", cfg, "--out", dir.string(), "--quiet"});
  CHECK(r.code == 2);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK_FALSE(report["converged"].get<bool>());
  CHECK(report["residual"].get<double>() > 1e-10);
}

TEST_CASE("invalid configuration names the field") {
  const auto dir = scratch();
  const auto cfg = write_config(dir, R"({"schema_version": 1, "model": {"delta": 2}})");
  const auto r = run({"solve", "--config", cfg});
  CHECK(r.code == 1);
  CHECK(r.err.find("model.delta") != std::string::npos);
}

TEST_CASE("simulate with seed 42 twice gives byte-identical files") {
  const auto dir = scratch();
  const auto cfg = write_config(dir, R"({"schema_version": 1, "mode": "stationary",
    "stationary": {"max_depth": 10, "theta_grid_size": 513},
    "simulate": {"n_paths": 200, "horizon": 12}})");
  for (const char* sub : {"a", "b"}) {
    REQUIRE(run({"simulate", "--config", cfg, "--seed", "42", "--out", (dir / sub).string(), "--quiet"}).code == 0);
  }
  for (const char* f : {"trajectories.csv", "hazard.csv", "summary.json"}) {
    CAPTURE(f);
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  const auto traj = slurp(dir / "a" / "trajectories.csv");
  CHECK(traj.substr(0, traj.find('\n')).find("seed=42") != std::string::npos);
  CHECK(second_line(traj) == "path,date,alpha,beta,action,outcome,wage,utility");
  CHECK(second_line(slurp(dir / "a" / "hazard.csv")) == "failure_run,at_risk,entries,rate");
  const auto summary = nlohmann::json::parse(slurp(dir / "a" / "summary.json"));
  CHECK(summary["seed"] == 42);
  CHECK(summary.contains("hazard_by_failure_run"));

  REQUIRE(run({"simulate", "--config", cfg, "--seed", "43", "--out", (dir / "c").string(), "--quiet"}).code == 0);
  CHECK(slurp(dir / "a" / "trajectories.csv") != slurp(dir / "c" / "trajectories.csv"));
}

TEST_CASE("simulate from a saved policy, fixed low talent") {
  const auto dir = scratch();
  const auto solve_cfg = write_config(dir, R"({"schema_version": 1, "mode": "stationary",
    "stationary": {"max_depth": 10, "theta_grid_size": 513}})");
  REQUIRE(run({"solve", "--config", solve_cfg, "--out", (dir / "s").string(), "--quiet"}).code == 0);
  const auto policy = (dir / "s" / "policy.json").string();
  std::ofstream(dir / "sim.json") << R"({"schema_version": 1, "simulate": {"n_paths": 100, "horizon": 5,
    "theta": {"kind": "fixed", "value": 0.1}, "policy_file": ")" << policy << R"("}})";
  REQUIRE(run({"simulate", "--config", (dir / "sim.json").string(), "--out", (dir / "m").string(),
               "--format", "json", "--quiet"})
              .code == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "m" / "summary.json"));
  REQUIRE(summary["absorption_time"].size() == 1);
  CHECK(summary["absorption_time"][0]["date"] == 0);
  CHECK(summary["absorption_time"][0]["paths"] == 100);
  CHECK(fs::exists(dir / "m" / "trajectories.json"));

  std::ofstream(dir / "missing.json")
      << R"({"schema_version": 1, "simulate": {"policy_file": "/nonexistent/policy.json"}})";
  CHECK(run({"simulate", "--config", (dir / "missing.json").string(), "--quiet"}).code == 1);
}

TEST_CASE("delta sweep prints a verdict line") {
  const auto dir = scratch();
  const auto cfg = write_config(dir, R"({"schema_version": 1, "mode": "stationary",
    "stationary": {"max_depth": 8, "theta_grid_size": 257},
    "sweep": {"parameter": "delta", "values": [0.5, 0.7, 0.9]}})");
  const auto r = run({"sweep", "--config", cfg, "--out", dir.string(), "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.find("monotonicity: cutoffs weakly decreasing in delta: PASS") != std::string::npos);
  CHECK(second_line(slurp(dir / "sweep.csv")) == "delta,alpha,beta,regime,cutoff,wage");

  const auto bad = write_config(dir, R"({"schema_version": 1, "mode": "stationary",
    "stationary": {"max_depth": 4, "theta_grid_size": 257},
    "sweep": {"parameter": "delta", "values": [0.5, 1.5]}})");
  CHECK(run({"sweep", "--config", bad, "--out", dir.string(), "--quiet"}).code == 2);
}

TEST_CASE("grid solve and its budget") {
  const auto dir = scratch();
  const auto cfg = write_config(dir, R"({"schema_version": 1, "mode": "grid",
    "grid": {"points": 501, "phi": 0.3, "periods": 3}})");
  REQUIRE(run({"solve", "--config", cfg, "--out", dir.string(), "--quiet"}).code == 0);
  CHECK(second_line(slurp(dir / "grid_policy.csv")) ==
        "date,successes,failures,signal_ones,signal_zeros,regime,belief_mean,cutoff,wage,employment_mass");
  const auto big = write_config(dir, R"({"schema_version": 1, "mode": "grid",
    "grid": {"points": 101, "phi": 0.3, "periods": 12, "node_budget": 50}})");
  CHECK(run({"solve", "--config", big, "--out", dir.string(), "--quiet"}).code == 2);
  CHECK(run({"simulate", "--config", cfg, "--out", dir.string(), "--quiet"}).code == 1);
}
