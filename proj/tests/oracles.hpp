// Test-only reference computations. Each one takes a different route from
// the library code it is used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "detsum/matrix.hpp"
#include "detsum/ring.hpp"
#include "detsum/subset.hpp"

namespace detsum::testing {

/// Cofactor expansion along the first row, recursively.
inline RingElement laplace_det(const SquareMatrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return a(0, 0);
  RingElement sum = a.ring().zero();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<RingElement> minor;
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) minor.push_back(a(r, k));
      }
    }
    RingElement t = a(0, c) * laplace_det(SquareMatrix(a.ring(), n - 1, std::move(minor)));
    sum = (c % 2 == 0) ? sum + t : sum - t;
  }
  return sum;
}

inline SquareMatrix naive_subset_sum(std::span<const SquareMatrix> ms, std::uint64_t bits) {
  SquareMatrix sum(ms.front().ring(), ms.front().size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if ((bits >> i) & 1u) {
      std::vector<RingElement> e;
      for (std::size_t k = 0; k < sum.entries().size(); ++k) {
        e.push_back(sum.entries()[k] + ms[i].entries()[k]);
      }
      sum = SquareMatrix(sum.ring(), sum.size(), std::move(e));
    }
  }
  return sum;
}

inline int popcount(std::uint64_t bits) {
  int c = 0;
  for (; bits; bits >>= 1) c += static_cast<int>(bits & 1u);
  return c;
}

/// Alternating sum recomputed per subset with cofactor determinants.
inline RingElement naive_alternating_sum(std::span<const SquareMatrix> ms) {
  RingElement sum = ms.front().ring().zero();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ms.size()); ++bits) {
    RingElement d = laplace_det(naive_subset_sum(ms, bits));
    sum = (popcount(bits) % 2) ? sum - d : sum + d;
  }
  return sum;
}

/// Scans all 2^m masks and keeps the smallest (cardinality, value) hit.
template <class Pred>
std::optional<std::uint64_t> brute_force_first(std::size_t m, std::size_t max_card, Pred pred) {
  std::optional<std::uint64_t> best;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << m); ++bits) {
    if (static_cast<std::size_t>(popcount(bits)) > max_card) continue;
    if (!pred(bits)) continue;
    if (!best || popcount(bits) < popcount(*best) ||
        (popcount(bits) == popcount(*best) && bits < *best)) {
      best = bits;
    }
  }
  return best;
}

inline SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t n = a.size();
  std::vector<RingElement> e;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      RingElement s = a.ring().zero();
      for (std::size_t k = 0; k < n; ++k) s += a(r, k) * b(k, c);
      e.push_back(s);
    }
  }
  return SquareMatrix(a.ring(), n, std::move(e));
}

inline SquareMatrix scale(const RingElement& c, const SquareMatrix& a) {
  std::vector<RingElement> e;
  for (const auto& x : a.entries()) e.push_back(c * x);
  return SquareMatrix(a.ring(), a.size(), std::move(e));
}

inline RingDescriptor field(long p) { return RingDescriptor::prime_field(p); }
inline RingDescriptor zmod(long n) { return RingDescriptor::mod_ring(n); }
inline RingDescriptor product_of(std::initializer_list<long> primes) {
  std::vector<RingDescriptor> parts;
  for (long p : primes) parts.push_back(field(p));
  return RingDescriptor::product(std::move(parts));
}

inline RingElement tuple(const RingDescriptor& ring, std::initializer_list<long> values) {
  std::vector<RingElement> parts;
  std::size_t i = 0;
  for (long v : values) parts.push_back(ring.components()[i++].from_integer(v));
  return ring.tuple(std::move(parts));
}

}  // namespace detsum::testing
