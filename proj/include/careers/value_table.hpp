#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace careers {

/// Values tabulated on the uniform talent grid theta_i = i / (n - 1), read
/// back by linear interpolation.
class ValueTable {
 public:
  ValueTable() = default;

  explicit ValueTable(std::size_t points, double fill = 0.0) : values_(points, fill) {
    if (points < 2) throw std::invalid_argument("ValueTable: need at least two grid points");
  }

  std::size_t size() const noexcept { return values_.size(); }

  double theta(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(values_.size() - 1);
  }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Linear interpolation; theta is clamped to [0, 1].
  double operator()(double theta) const noexcept {
    const std::size_t last = values_.size() - 1;
    if (!(theta > 0.0)) return values_.front();
    if (theta >= 1.0) return values_.back();
    const double x = theta * static_cast<double>(last);
    std::size_t i = static_cast<std::size_t>(x);
    if (i >= last) i = last - 1;
    const double frac = x - static_cast<double>(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
  }

 private:
  std::vector<double> values_;
};

}  // namespace careers
