#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "careers/finite.hpp"
#include "careers/grid.hpp"
#include "careers/montecarlo.hpp"
#include "careers/policy.hpp"
#include "careers/stationary.hpp"

namespace careers::io {

inline constexpr int kSchemaVersion = 1;

enum class Mode { finite, stationary, grid };
enum class Format { csv, json };

std::string_view to_string(Mode m) noexcept;
std::string_view to_string(Format f) noexcept;
std::optional<Format> parse_format(std::string_view s) noexcept;

struct ModelConfig {
  double delta = 0.95;
  Preferences prefs = Preferences::crra(0.5);
  Regime regime = Regime::naive;
  BetaParams prior{1.0, 1.0};
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct FiniteConfig {
  int periods = 3;
  std::size_t theta_grid_size = 4097;
  ValueRepresentation representation = ValueRepresentation::grid;
  friend bool operator==(const FiniteConfig&, const FiniteConfig&) = default;
};

struct StationaryConfig {
  int max_depth = 12;
  std::size_t theta_grid_size = 4097;
  double tolerance = 1e-10;
  int max_sweeps = 10000;
  friend bool operator==(const StationaryConfig&, const StationaryConfig&) = default;
};

struct GridConfig {
  std::size_t points = 2001;
  double phi = 0.0;
  double zbar = 0.5;
  int periods = 3;
  std::size_t node_budget = 1'000'000;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct SweepConfig {
  SweepParameter parameter = SweepParameter::delta;
  std::vector<double> values;
  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SimulateConfig {
  std::size_t n_paths = 1000;
  int horizon = 10;
  std::uint64_t seed = 0;
  ThetaSource theta{};
  /// Policy JSON written by `solve`; when absent the policy is solved in place.
  std::optional<std::string> policy_file;
  friend bool operator==(const SimulateConfig&, const SimulateConfig&) = default;
};

struct OutputConfig {
  std::string dir = ".";
  Format format = Format::csv;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  Mode mode = Mode::finite;
  unsigned threads = 1;
  ModelConfig model;
  FiniteConfig finite;
  StationaryConfig stationary;
  GridConfig grid;
  SweepConfig sweep;
  SimulateConfig simulate;
  OutputConfig output;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Validation failure; what() starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Missing sections and fields take their defaults; unknown keys, wrong types
/// and out-of-range values throw ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Every field, including defaults.
nlohmann::json to_json(const RunConfig& c);

/// FNV-1a 64 of the canonical (key-sorted, compact) JSON form without
/// output.dir, as 16 hex digits.
std::string config_hash(const RunConfig& c);

FiniteHorizonSpec finite_spec(const RunConfig& c);
LatticeSpec lattice_spec(const RunConfig& c);
GridProblem grid_problem(const RunConfig& c);
SimSpec sim_spec(const RunConfig& c);

nlohmann::json to_json(const Preferences& p);
Preferences preferences_from_json(const nlohmann::json& j, const std::string& field = "utility");

nlohmann::json to_json(const PolicyTable& t);
/// Throws ConfigError on malformed input.
PolicyTable policy_from_json(const nlohmann::json& j);
PolicyTable load_policy(const std::filesystem::path& path);

nlohmann::json to_json(const Summary& s);
nlohmann::json to_json(const GridPolicy& g);
nlohmann::json to_json(std::span<const Trajectory> trajs);

/// Shortest text with 17 significant digits.
std::string format_double(double x);

/// Run identification written as the first line of every CSV file.
struct Provenance {
  std::string config_hash;
  std::optional<std::uint64_t> seed;
};

void write_provenance(std::ostream& os, const Provenance& p);

/// Finite tables: date,alpha,beta,regime,cutoff,wage.
/// Stationary tables: alpha,beta,regime,cutoff,wage,absorbing_mass.
void write_policy_csv(std::ostream& os, const PolicyTable& t, const Provenance& p);
/// path,date,alpha,beta,action,outcome,wage,utility
void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajs,
                            const Provenance& p);
/// failure_run,at_risk,entries,rate
void write_hazard_csv(std::ostream& os, const Summary& s, const Provenance& p);
/// date,successes,failures,signal_ones,signal_zeros,regime,belief_mean,cutoff,wage,employment_mass
void write_grid_csv(std::ostream& os, const GridPolicy& g, Regime regime, const Provenance& p);
/// <parameter>,alpha,beta,regime,cutoff,wage for every converged point.
void write_sweep_csv(std::ostream& os, SweepParameter parameter, std::span<const SweepPoint> points,
                     const Provenance& p);

}  // namespace careers::io
