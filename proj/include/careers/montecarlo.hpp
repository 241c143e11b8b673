#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "careers/beta.hpp"
#include "careers/policy.hpp"

namespace careers {

struct ThetaSource {
  enum class Kind { prior, fixed };
  Kind kind = Kind::prior;
  /// Talent used by every path when kind == fixed.
  double value = 0.5;

  static ThetaSource from_prior() { return {Kind::prior, 0.5}; }
  static ThetaSource fixed(double theta) { return {Kind::fixed, theta}; }
  friend bool operator==(const ThetaSource&, const ThetaSource&) = default;
};

struct SimSpec {
  std::size_t n_paths = 1000;
  int horizon = 10;
  std::uint64_t seed = 0;
  ThetaSource theta{};
  /// Worker threads; trajectories do not depend on this.
  unsigned threads = 1;
};

class UnconvergedPolicy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Action { self_employment, employment };

std::string_view to_string(Action a) noexcept;

struct PeriodRecord {
  int date;
  BetaParams state;
  Action action;
  /// Public outcome; empty under employment.
  std::optional<Outcome> outcome;
  /// Wage received; empty under self-employment.
  std::optional<double> wage;
  /// Wage posted at this state, taken or not.
  double offer;
  double utility;
};

struct Trajectory {
  std::uint64_t path;
  double theta;
  std::vector<PeriodRecord> periods;
};

/// Independent generator seed for a path, derived from (seed, path) by
/// splitmix64 mixing. Same inputs give the same stream on every run.
std::uint64_t path_seed(std::uint64_t seed, std::uint64_t path) noexcept;

/// Simulates n_paths careers of `horizon` periods under the posted policy.
/// The worker employs iff theta <= cutoff.
///
/// Throws UnconvergedPolicy for an unconverged stationary table and
/// std::invalid_argument if a finite table is shorter than the horizon or the
/// spec is invalid.
std::vector<Trajectory> simulate(const PolicyTable& policy, const SimSpec& spec);

struct DateStats {
  std::uint64_t paths = 0;
  std::uint64_t self_employed = 0;
  double self_employment_share() const noexcept {
    return paths == 0 ? 0.0 : static_cast<double>(self_employed) / static_cast<double>(paths);
  }
};

/// Paths still outside employment at t-1 whose trailing failure run has a
/// given length, and how many of them enter employment at t.
struct HazardCell {
  std::uint64_t at_risk = 0;
  std::uint64_t entries = 0;
  double rate() const noexcept {
    return at_risk == 0 ? 0.0 : static_cast<double>(entries) / static_cast<double>(at_risk);
  }
};

struct MeanCell {
  double sum = 0.0;
  std::uint64_t count = 0;
  double mean() const noexcept { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
};

/// Offers at date t split by the public outcome at t-1.
struct GapCell {
  MeanCell after_success;
  MeanCell after_failure;
  bool defined() const noexcept { return after_success.count > 0 && after_failure.count > 0; }
  double gap() const noexcept { return after_success.mean() - after_failure.mean(); }
};

struct Summary {
  std::uint64_t paths = 0;
  std::vector<DateStats> dates;
  /// First employment date -> number of paths.
  std::map<int, std::uint64_t> absorption_time;
  std::uint64_t never_employed = 0;
  /// Paths that chose self-employment after an employment period.
  std::uint64_t employment_exits = 0;
  /// Indexed by trailing failure-run length.
  std::vector<HazardCell> hazard;
  /// Mean received wage keyed by public state (alpha, beta).
  std::map<std::pair<double, double>, MeanCell> wage_by_state;
  /// Indexed by date; entry 0 is never defined.
  std::vector<GapCell> offer_gap;

  /// Adds another summary. Order of merges does not change counts.
  void merge(const Summary& other);
};

/// Throws std::invalid_argument for an empty collection.
Summary aggregate(std::span<const Trajectory> trajs);

}  // namespace careers
