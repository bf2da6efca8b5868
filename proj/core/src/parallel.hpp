#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace detsum::detail {

/// Folds `step(acc, x)` over x in [first, last] (inclusive). With several
/// threads the range is cut into contiguous chunks whose partial results are
/// merged in chunk order, so the outcome matches the sequential fold whenever
/// `merge` is associative.
template <class Acc, class Step, class Merge>
Acc chunked_fold(std::uint64_t first, std::uint64_t last, unsigned threads, const Acc& zero,
                 Step step, Merge merge) {
  const std::uint64_t span = last - first;  // count - 1, never overflows
  if (threads <= 1 || span < threads) {
    Acc acc = zero;
    for (std::uint64_t x = first;; ++x) {
      step(acc, x);
      if (x == last) break;
    }
    return acc;
  }
  const std::uint64_t chunk = span / threads + 1;
  std::vector<Acc> partial(threads, zero);
  std::vector<std::exception_ptr> failures(threads);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        const std::uint64_t lo = first + t * chunk;
        if (lo < first || lo > last) return;
        const std::uint64_t hi = (last - lo < chunk) ? last : lo + chunk - 1;
        for (std::uint64_t x = lo;; ++x) {
          step(partial[t], x);
          if (x == hi) break;
        }
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  Acc acc = std::move(partial[0]);
  for (unsigned t = 1; t < threads; ++t) merge(acc, std::move(partial[t]));
  return acc;
}

}  // namespace detsum::detail
