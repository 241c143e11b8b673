#pragma once

// Internal helpers shared by the solvers.

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "careers/lattice.hpp"
#include "careers/model.hpp"
#include "careers/value_table.hpp"

namespace careers::detail {

/// Continuation values read from the next layer of a Beta lattice.
class LatticeContinuation final : public ContinuationValues {
 public:
  LatticeContinuation(const std::vector<ValueTable>& next, Lattice::Point p)
      : up_(&next[Lattice::index(p.successes + 1, p.failures)]),
        down_(&next[Lattice::index(p.successes, p.failures + 1)]),
        stay_(&next[Lattice::index(p.successes, p.failures)]) {}

  double after_success(double theta) const override { return (*up_)(theta); }
  double after_failure(double theta) const override { return (*down_)(theta); }
  double after_employment(double theta) const override { return (*stay_)(theta); }

 private:
  const ValueTable* up_;
  const ValueTable* down_;
  const ValueTable* stay_;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers with static
/// contiguous chunks. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::exception_ptr failure;
  std::mutex guard;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          std::lock_guard lock(guard);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace careers::detail
