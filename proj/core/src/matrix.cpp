#include "detsum/matrix.hpp"

#include <bit>
#include <numeric>
#include <sstream>

#include "detsum/error.hpp"

namespace detsum {

namespace {

void check_same(const SquareMatrix& a, const SquareMatrix& b) {
  if (!(a.ring() == b.ring())) {
    throw Error(ErrorCode::RingMismatch,
                "matrices over " + a.ring().to_string() + " and " + b.ring().to_string());
  }
  if (a.size() != b.size()) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(a.size()) + "x" +
                                              std::to_string(a.size()) + " vs " +
                                              std::to_string(b.size()) + "x" +
                                              std::to_string(b.size()));
  }
}

void require_size(std::size_t n, std::size_t cap, DetAlgorithm algorithm) {
  if (n > cap) {
    throw Error(ErrorCode::SizeLimit, std::string(to_string(algorithm)) + " supports n <= " +
                                          std::to_string(cap) + ", got " + std::to_string(n));
  }
}

RingElement det_leibniz(const SquareMatrix& a) {
  const std::size_t n = a.size();
  require_size(n, kMaxLeibnizSize, DetAlgorithm::Leibniz);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto term = [&] {
    RingElement t = a(0, perm[0]);
    for (std::size_t r = 1; r < n && !t.is_zero(); ++r) t *= a(r, perm[r]);
    return t;
  };

  // Heap's algorithm: consecutive permutations differ by one transposition.
  RingElement sum = term();
  bool odd = false;
  std::vector<std::size_t> counter(n, 0);
  std::size_t i = 1;
  while (i < n) {
    if (counter[i] < i) {
      std::swap(perm[i % 2 == 0 ? 0 : counter[i]], perm[i]);
      odd = !odd;
      RingElement t = term();
      if (!t.is_zero()) sum = odd ? sum - t : sum + t;
      ++counter[i];
      i = 1;
    } else {
      counter[i] = 0;
      ++i;
    }
  }
  return sum;
}

// dp[cols] = determinant of rows 0..|cols|-1 restricted to the column set
// `cols`, by Laplace expansion along the last of those rows.
RingElement det_minor_expansion(const SquareMatrix& a) {
  const std::size_t n = a.size();
  require_size(n, kMaxDivisionFreeSize, DetAlgorithm::MinorExpansion);
  const RingDescriptor& ring = a.ring();
  const std::size_t full = (std::size_t{1} << n) - 1;

  std::vector<RingElement> dp(full + 1, ring.zero());
  dp[0] = ring.one();
  for (std::size_t cols = 1; cols <= full; ++cols) {
    const std::size_t row = static_cast<std::size_t>(std::popcount(cols)) - 1;
    RingElement acc = ring.zero();
    std::size_t above = 0;
    // Walk columns from the highest so the number of set columns above c is known.
    for (std::size_t c = n; c-- > 0;) {
      if (!((cols >> c) & 1u)) continue;
      const RingElement& minor = dp[cols & ~(std::size_t{1} << c)];
      const RingElement& entry = a(row, c);
      if (!minor.is_zero() && !entry.is_zero()) {
        RingElement t = entry * minor;
        acc = (above % 2 == 0) ? acc + t : acc - t;
      }
      ++above;
    }
    dp[cols] = std::move(acc);
  }
  return dp[full];
}

RingElement det_bareiss(const SquareMatrix& a) {
  const RingDescriptor& ring = a.ring();
  if (!ring.supports_exact_division()) {
    throw Error(ErrorCode::UnsupportedAlgorithm, "Bareiss needs exact division; " +
                                                     ring.to_string() + " does not have it");
  }
  const std::size_t n = a.size();
  require_size(n, kMaxEliminationSize, DetAlgorithm::Bareiss);
  std::vector<RingElement> m = a.entries();
  auto at = [&](std::size_t r, std::size_t c) -> RingElement& { return m[r * n + c]; };

  bool negate = false;
  RingElement previous = ring.one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && at(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return ring.zero();
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      negate = !negate;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        at(r, c) = exact_divide(at(r, c) * at(k, k) - at(r, k) * at(k, c), previous);
      }
      at(r, k) = ring.zero();
    }
    previous = at(k, k);
  }
  RingElement d = at(n - 1, n - 1);
  return negate ? -d : d;
}

RingElement det_elimination(const SquareMatrix& a) {
  const RingDescriptor& ring = a.ring();
  const bool field_kind = ring.kind() == RingKind::Rationals ||
                          ring.kind() == RingKind::PrimeField ||
                          (ring.kind() == RingKind::ModRing && ring.is_field());
  if (!field_kind) {
    throw Error(ErrorCode::UnsupportedAlgorithm, "elimination needs a field; got " +
                                                     ring.to_string());
  }
  const std::size_t n = a.size();
  require_size(n, kMaxEliminationSize, DetAlgorithm::Elimination);
  std::vector<RingElement> m = a.entries();
  auto at = [&](std::size_t r, std::size_t c) -> RingElement& { return m[r * n + c]; };

  RingElement d = ring.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && at(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return ring.zero();
    if (pivot != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      d = -d;
    }
    d *= at(k, k);
    const RingElement inv = *try_inverse(at(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (at(r, k).is_zero()) continue;
      const RingElement factor = at(r, k) * inv;
      for (std::size_t c = k + 1; c < n; ++c) at(r, c) -= factor * at(k, c);
    }
  }
  return d;
}

RingElement det_componentwise(const SquareMatrix& a) {
  std::vector<RingElement> parts;
  parts.reserve(a.ring().components().size());
  for (std::size_t i = 0; i < a.ring().components().size(); ++i) {
    parts.push_back(det(component_matrix(a, i), DetAlgorithm::Auto));
  }
  return a.ring().tuple(std::move(parts));
}

}  // namespace

SquareMatrix::SquareMatrix(RingDescriptor ring, std::size_t n)
    : ring_(std::move(ring)), n_(n) {
  if (n == 0) throw Error(ErrorCode::ShapeMismatch, "matrix size must be >= 1");
  entries_.assign(n * n, ring_.zero());
}

SquareMatrix::SquareMatrix(RingDescriptor ring, std::size_t n, std::vector<RingElement> entries)
    : ring_(std::move(ring)), n_(n), entries_(std::move(entries)) {
  if (n == 0) throw Error(ErrorCode::ShapeMismatch, "matrix size must be >= 1");
  if (entries_.size() != n * n) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(entries_.size()) +
                                              " entries for a " + std::to_string(n) + "x" +
                                              std::to_string(n) + " matrix");
  }
  for (const auto& e : entries_) {
    if (!(e.ring() == ring_)) {
      throw Error(ErrorCode::RingMismatch, "entry in " + e.ring().to_string() +
                                               " for a matrix over " + ring_.to_string());
    }
  }
}

SquareMatrix SquareMatrix::identity(const RingDescriptor& ring, std::size_t n) {
  SquareMatrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = ring.one();
  return m;
}

SquareMatrix SquareMatrix::diagonal(const RingDescriptor& ring, std::vector<RingElement> diag) {
  SquareMatrix m(ring, diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, std::move(diag[i]));
  return m;
}

SquareMatrix SquareMatrix::unit(const RingDescriptor& ring, std::size_t n, std::size_t row,
                                std::size_t col) {
  SquareMatrix m(ring, n);
  m.set(row, col, ring.one());
  return m;
}

SquareMatrix SquareMatrix::from_integers(const RingDescriptor& ring,
                                         const std::vector<std::vector<Integer>>& rows) {
  const std::size_t n = rows.size();
  std::vector<RingElement> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "matrix rows must be square");
    for (const auto& v : row) entries.push_back(ring.from_integer(v));
  }
  return SquareMatrix(ring, n, std::move(entries));
}

void SquareMatrix::set(std::size_t row, std::size_t col, RingElement value) {
  if (row >= n_ || col >= n_) {
    throw Error(ErrorCode::ShapeMismatch, "entry (" + std::to_string(row) + "," +
                                              std::to_string(col) + ") outside " +
                                              std::to_string(n_) + "x" + std::to_string(n_));
  }
  if (!(value.ring() == ring_)) {
    throw Error(ErrorCode::RingMismatch, "entry in " + value.ring().to_string() +
                                             " for a matrix over " + ring_.to_string());
  }
  entries_[row * n_ + col] = std::move(value);
}

std::string SquareMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < n_; ++r) {
    out << (r ? "; " : "");
    for (std::size_t c = 0; c < n_; ++c) out << (c ? " " : "") << (*this)(r, c).to_string();
  }
  out << "]";
  return out.str();
}

SquareMatrix mat_add(const SquareMatrix& a, const SquareMatrix& b) {
  check_same(a, b);
  std::vector<RingElement> sum;
  sum.reserve(a.entries().size());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    sum.push_back(a.entries()[i] + b.entries()[i]);
  }
  return SquareMatrix(a.ring(), a.size(), std::move(sum));
}

void check_family(std::span<const SquareMatrix> matrices) {
  if (matrices.empty()) throw Error(ErrorCode::ShapeMismatch, "empty matrix family");
  for (const auto& m : matrices) check_same(matrices.front(), m);
}

SquareMatrix subset_sum(std::span<const SquareMatrix> matrices, const SubsetMask& mask) {
  check_family(matrices);
  for (auto i : mask.indices()) {
    if (i >= matrices.size()) {
      throw Error(ErrorCode::MaskOutOfRange, "mask index " + std::to_string(i) +
                                                 " for a family of " +
                                                 std::to_string(matrices.size()));
    }
  }
  SquareMatrix sum(matrices.front().ring(), matrices.front().size());
  for (auto i : mask.indices()) sum = mat_add(sum, matrices[i]);
  return sum;
}

SquareMatrix component_matrix(const SquareMatrix& a, std::size_t component) {
  const auto& parts = a.ring().components();
  if (component >= parts.size()) {
    throw Error(ErrorCode::ArityMismatch, "component " + std::to_string(component) + " of " +
                                              a.ring().to_string());
  }
  std::vector<RingElement> entries;
  entries.reserve(a.entries().size());
  for (const auto& e : a.entries()) entries.push_back(e.components()[component]);
  return SquareMatrix(parts[component], a.size(), std::move(entries));
}

std::string_view to_string(DetAlgorithm algorithm) noexcept {
  switch (algorithm) {
    case DetAlgorithm::Auto: return "auto";
    case DetAlgorithm::Leibniz: return "leibniz";
    case DetAlgorithm::MinorExpansion: return "minor_expansion";
    case DetAlgorithm::Bareiss: return "bareiss";
    case DetAlgorithm::Elimination: return "elimination";
  }
  return "?";
}

RingElement det(const SquareMatrix& a, DetAlgorithm algorithm) {
  switch (algorithm) {
    case DetAlgorithm::Leibniz: return det_leibniz(a);
    case DetAlgorithm::MinorExpansion: return det_minor_expansion(a);
    case DetAlgorithm::Bareiss: return det_bareiss(a);
    case DetAlgorithm::Elimination: return det_elimination(a);
    case DetAlgorithm::Auto: break;
  }
  const RingDescriptor& ring = a.ring();
  if (a.size() == 1) return a(0, 0);
  switch (ring.kind()) {
    case RingKind::PrimeField: return det_elimination(a);
    case RingKind::Integers:
    case RingKind::Rationals: return det_bareiss(a);
    case RingKind::Product: return det_componentwise(a);
    case RingKind::ModRing:
      if (ring.is_field()) return det_elimination(a);
      [[fallthrough]];
    case RingKind::PolyOverZ:
      if (a.size() <= 5) return det_leibniz(a);
      return det_minor_expansion(a);
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown ring kind");
}

bool is_invertible(const SquareMatrix& a) { return is_unit(det(a)); }

}  // namespace detsum
