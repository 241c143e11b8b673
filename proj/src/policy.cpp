#include "careers/policy.hpp"

#include <string>

namespace careers {

PolicyTable::PolicyTable(Header header, std::vector<std::vector<CutoffWage>> layers)
    : header_(std::move(header)),
      layers_(std::move(layers)),
      lattice_(header_.prior, header_.kind == HorizonKind::finite ? 0 : header_.extent) {
  if (header_.extent < 1 && header_.kind == HorizonKind::finite) {
    throw std::invalid_argument("PolicyTable: finite horizon needs at least one period");
  }
  if (header_.kind == HorizonKind::finite) {
    if (layers_.size() != static_cast<std::size_t>(header_.extent)) {
      throw std::invalid_argument("PolicyTable: expected one layer per period");
    }
    for (std::size_t t = 0; t < layers_.size(); ++t) {
      if (layers_[t].size() != Lattice::count(static_cast<int>(t))) {
        throw std::invalid_argument("PolicyTable: layer " + std::to_string(t) +
                                    " has the wrong number of states");
      }
    }
  } else {
    if (header_.extent < 0) throw std::invalid_argument("PolicyTable: negative depth cap");
    if (layers_.size() != 1 || layers_[0].size() != Lattice::count(header_.extent)) {
      throw std::invalid_argument("PolicyTable: stationary table needs one full lattice layer");
    }
  }
}

CutoffWage PolicyTable::lookup(int date, const BetaParams& state) const {
  const auto point = lattice_.locate(state);
  if (!point) {
    throw UnreachableState("state (" + std::to_string(state.alpha()) + ", " +
                           std::to_string(state.beta()) + ") is not reachable from the prior");
  }
  if (header_.kind == HorizonKind::finite) {
    if (date < 0 || date >= header_.extent) {
      throw UnreachableState("date " + std::to_string(date) + " is outside the horizon");
    }
    if (point->depth() > date) {
      throw UnreachableState("state is not reachable by date " + std::to_string(date));
    }
    return layers_[static_cast<std::size_t>(date)][Lattice::index(*point)];
  }
  if (point->depth() <= header_.extent) return layers_[0][Lattice::index(*point)];
  return static_cutoff(state, header_.regime, header_.prefs, header_.delta);
}

CutoffWage static_cutoff(const BetaParams& state, Regime regime, const Preferences& prefs,
                         double delta, CutoffOptions options) {
  return solve_cutoff(state, regime, TerminalContinuation{}, prefs, delta, options);
}

}  // namespace careers
