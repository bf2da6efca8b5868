#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "detsum/ring.hpp"
#include "detsum/subset.hpp"

namespace detsum {

/// n x n matrix over one of the supported rings, row-major.
class SquareMatrix {
 public:
  /// Zero matrix.
  SquareMatrix(RingDescriptor ring, std::size_t n);
  SquareMatrix(RingDescriptor ring, std::size_t n, std::vector<RingElement> entries);

  static SquareMatrix identity(const RingDescriptor& ring, std::size_t n);
  static SquareMatrix diagonal(const RingDescriptor& ring, std::vector<RingElement> diag);
  /// E_{row,col}: a single 1 at (row, col).
  static SquareMatrix unit(const RingDescriptor& ring, std::size_t n, std::size_t row,
                           std::size_t col);
  /// Entries given as integers and mapped through Z -> R.
  static SquareMatrix from_integers(const RingDescriptor& ring,
                                    const std::vector<std::vector<Integer>>& rows);

  const RingDescriptor& ring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return n_; }
  const std::vector<RingElement>& entries() const noexcept { return entries_; }

  const RingElement& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * n_ + col];
  }
  void set(std::size_t row, std::size_t col, RingElement value);

  std::string to_string() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  RingDescriptor ring_;
  std::size_t n_;
  std::vector<RingElement> entries_;
};

SquareMatrix mat_add(const SquareMatrix& a, const SquareMatrix& b);
inline SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) { return mat_add(a, b); }

/// Checks that a non-empty family shares one ring and size.
void check_family(std::span<const SquareMatrix> matrices);

/// Sum of the selected matrices; the empty selection gives the zero matrix.
SquareMatrix subset_sum(std::span<const SquareMatrix> matrices, const SubsetMask& mask);

/// Projection of a product-ring matrix onto one component ring.
SquareMatrix component_matrix(const SquareMatrix& a, std::size_t component);

enum class DetAlgorithm {
  Auto,
  Leibniz,         ///< signed permutation sum, n <= 10
  MinorExpansion,  ///< division-free DP over column subsets, n <= 16
  Bareiss,         ///< fraction-free elimination: Z, Q, F_p
  Elimination,     ///< Gaussian elimination over a field
};

std::string_view to_string(DetAlgorithm algorithm) noexcept;

inline constexpr std::size_t kMaxLeibnizSize = 10;
inline constexpr std::size_t kMaxDivisionFreeSize = 16;
inline constexpr std::size_t kMaxEliminationSize = 64;

/// Exact determinant.
///
/// Auto picks elimination over prime fields, Bareiss over Z and Q, works
/// componentwise over products, and otherwise uses Leibniz for n <= 5 and the
/// column-subset expansion up to n = 16.
RingElement det(const SquareMatrix& a, DetAlgorithm algorithm = DetAlgorithm::Auto);

/// A matrix over a commutative ring is invertible iff its determinant is a unit.
bool is_invertible(const SquareMatrix& a);

}  // namespace detsum
