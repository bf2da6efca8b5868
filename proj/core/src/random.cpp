#include "detsum/random.hpp"

#include <limits>

#include "detsum/error.hpp"

namespace detsum {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidParameters, "empty random range");
  // Rejection keeps the mapping exact.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(width));
}

Integer Rng::below(const Integer& bound) {
  if (bound <= 0) throw Error(ErrorCode::InvalidParameters, "empty random range");
  if (bound.fits_ulong_p()) return Integer(below(static_cast<std::uint64_t>(bound.get_ui())));
  const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
  Integer x = 0;
  for (std::size_t w = 0; w < words; ++w) {
    x <<= 64;
    x += Integer(std::to_string(next()));
  }
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), bound.get_mpz_t());
  return r;
}

RingElement random_element(const RingDescriptor& ring, Rng& rng, std::int64_t magnitude) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return ring.from_integer(rng.between(-magnitude, magnitude));
    case RingKind::Rationals:
      return ring.rational(rng.between(-magnitude, magnitude), rng.between(1, magnitude));
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return ring.from_integer(rng.below(ring.modulus()));
    case RingKind::Product: {
      std::vector<RingElement> parts;
      for (const auto& c : ring.components()) parts.push_back(random_element(c, rng, magnitude));
      return ring.tuple(std::move(parts));
    }
    case RingKind::PolyOverZ:
      return ring.poly(random_poly(ring.var_count(), 3, 2, rng, magnitude));
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown ring kind");
}

SquareMatrix random_matrix(const RingDescriptor& ring, std::size_t n, Rng& rng,
                           std::int64_t magnitude) {
  std::vector<RingElement> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n * n; ++i) entries.push_back(random_element(ring, rng, magnitude));
  return SquareMatrix(ring, n, std::move(entries));
}

SparsePoly random_poly(std::size_t var_count, std::size_t max_terms, std::uint32_t max_degree,
                       Rng& rng, std::int64_t magnitude) {
  SparsePoly p(var_count);
  const std::size_t terms = rng.below(max_terms + 1);
  for (std::size_t t = 0; t < terms; ++t) {
    SparsePoly::Exponents e(var_count, 0);
    if (var_count > 0) {
      std::uint32_t degree = static_cast<std::uint32_t>(rng.below(max_degree + 1));
      for (std::uint32_t d = 0; d < degree; ++d) ++e[rng.below(var_count)];
    }
    p.add_term(e, rng.between(-magnitude, magnitude));
  }
  return p;
}

SparsePoly random_homogeneous_poly(std::size_t var_count, std::uint32_t degree,
                                   std::size_t max_terms, Rng& rng, std::int64_t magnitude) {
  if (var_count == 0 && degree > 0) {
    throw Error(ErrorCode::InvalidParameters, "positive degree needs at least one variable");
  }
  SparsePoly p(var_count);
  while (p.is_zero()) {
    const std::size_t terms = 1 + rng.below(max_terms);
    for (std::size_t t = 0; t < terms; ++t) {
      SparsePoly::Exponents e(var_count, 0);
      for (std::uint32_t d = 0; d < degree; ++d) ++e[rng.below(var_count)];
      p.add_term(e, rng.between(-magnitude, magnitude));
    }
  }
  return p;
}

}  // namespace detsum
