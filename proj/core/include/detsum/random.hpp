#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "detsum/matrix.hpp"
#include "detsum/poly.hpp"
#include "detsum/ring.hpp"

namespace detsum {

/// Seeded generator for the randomized suites. Uses its own bounded-integer
/// mapping rather than std distributions so a seed gives the same stream on
/// every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Close to uniform in [0, bound) for arbitrary-precision bounds.
  Integer below(const Integer& bound);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Small random element: integers in [-magnitude, magnitude], reduced
/// fractions with numerator and denominator bounded by magnitude, uniform
/// residues, componentwise tuples, or short polynomials.
RingElement random_element(const RingDescriptor& ring, Rng& rng, std::int64_t magnitude = 5);
SquareMatrix random_matrix(const RingDescriptor& ring, std::size_t n, Rng& rng,
                           std::int64_t magnitude = 5);
SparsePoly random_poly(std::size_t var_count, std::size_t max_terms, std::uint32_t max_degree,
                       Rng& rng, std::int64_t magnitude = 5);
/// Non-zero homogeneous polynomial of the given degree.
SparsePoly random_homogeneous_poly(std::size_t var_count, std::uint32_t degree,
                                   std::size_t max_terms, Rng& rng, std::int64_t magnitude = 5);

}  // namespace detsum
