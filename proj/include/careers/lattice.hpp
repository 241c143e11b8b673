#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "careers/beta.hpp"

namespace careers {

/// Public states reachable from a prior by self-employment outcomes:
/// (alpha0 + successes, beta0 + failures) with successes + failures <= max_depth.
///
/// States are stored depth-major: index(s, k) = s(s+1)/2 + k for depth s and
/// k successes.
class Lattice {
 public:
  struct Point {
    int successes;
    int failures;
    int depth() const noexcept { return successes + failures; }
  };

  Lattice(BetaParams prior, int max_depth) : prior_(prior), max_depth_(max_depth) {
    if (max_depth < 0) throw std::invalid_argument("Lattice: max_depth must be non-negative");
  }

  const BetaParams& prior() const noexcept { return prior_; }
  int max_depth() const noexcept { return max_depth_; }

  static std::size_t count(int max_depth) noexcept {
    const auto d = static_cast<std::size_t>(max_depth);
    return (d + 1) * (d + 2) / 2;
  }
  std::size_t size() const noexcept { return count(max_depth_); }

  static std::size_t index(int successes, int failures) noexcept {
    const auto s = static_cast<std::size_t>(successes + failures);
    return s * (s + 1) / 2 + static_cast<std::size_t>(successes);
  }
  static std::size_t index(Point p) noexcept { return index(p.successes, p.failures); }

  static Point point(std::size_t idx) noexcept {
    std::size_t s = 0;
    while ((s + 1) * (s + 2) / 2 <= idx) ++s;
    const auto k = static_cast<int>(idx - s * (s + 1) / 2);
    return {k, static_cast<int>(s) - k};
  }

  BetaParams state(Point p) const {
    return BetaParams(prior_.alpha() + p.successes, prior_.beta() + p.failures);
  }
  BetaParams state(std::size_t idx) const { return state(point(idx)); }

  /// Lattice coordinates of a state reachable from the prior at any depth,
  /// or nullopt if the state is not prior + (integer successes, failures).
  std::optional<Point> locate(const BetaParams& s) const noexcept {
    const double k = s.alpha() - prior_.alpha();
    const double f = s.beta() - prior_.beta();
    const double kr = std::round(k);
    const double fr = std::round(f);
    if (kr < 0.0 || fr < 0.0 || std::fabs(k - kr) > 1e-9 || std::fabs(f - fr) > 1e-9) {
      return std::nullopt;
    }
    return Point{static_cast<int>(kr), static_cast<int>(fr)};
  }

  bool contains(const BetaParams& s) const noexcept {
    const auto p = locate(s);
    return p && p->depth() <= max_depth_;
  }

 private:
  BetaParams prior_;
  int max_depth_;
};

}  // namespace careers
