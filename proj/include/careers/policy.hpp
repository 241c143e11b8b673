#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "careers/lattice.hpp"
#include "careers/model.hpp"

namespace careers {

class UnreachableState : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class HorizonKind { finite, stationary };

/// Cutoffs and wages of a solved policy, detached from value functions.
///
/// A finite table holds one lattice layer per date (date t covers depth <= t);
/// a stationary table holds a single layer of depth max_depth. This is what
/// the simulator and the serializers consume.
class PolicyTable {
 public:
  struct Header {
    HorizonKind kind;
    BetaParams prior;
    Regime regime;
    Preferences prefs;
    double delta;
    /// Number of periods (finite) or lattice depth cap (stationary).
    int extent;
    bool converged = true;
    double residual = 0.0;
  };

  /// layers[t][Lattice::index(k, f)]; finite tables need layers[t].size() ==
  /// Lattice::count(t), stationary tables exactly one layer of Lattice::count(extent).
  PolicyTable(Header header, std::vector<std::vector<CutoffWage>> layers);

  const Header& header() const noexcept { return header_; }
  HorizonKind kind() const noexcept { return header_.kind; }
  const BetaParams& prior() const noexcept { return header_.prior; }
  Regime regime() const noexcept { return header_.regime; }
  const Preferences& prefs() const noexcept { return header_.prefs; }
  double delta() const noexcept { return header_.delta; }
  bool converged() const noexcept { return header_.converged; }

  /// Finite: number of periods. Stationary: lattice depth cap.
  int extent() const noexcept { return header_.extent; }

  const std::vector<std::vector<CutoffWage>>& layers() const noexcept { return layers_; }

  /// Posted cutoff and wage at (date, state).
  ///
  /// Finite tables throw UnreachableState if the date is past the horizon or
  /// the state is not reachable by that date. Stationary tables ignore the
  /// date; states deeper than the cap get the quasi-static cutoff the cap
  /// closure uses (the last-period fixed point at that state).
  CutoffWage lookup(int date, const BetaParams& state) const;

 private:
  Header header_;
  std::vector<std::vector<CutoffWage>> layers_;
  Lattice lattice_;
};

/// Quasi-static cutoff at a state: the last-period problem, where the worker
/// compares theta with u(w).
CutoffWage static_cutoff(const BetaParams& state, Regime regime, const Preferences& prefs,
                         double delta, CutoffOptions options = {});

}  // namespace careers
