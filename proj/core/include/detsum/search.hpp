#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "detsum/matrix.hpp"
#include "detsum/ring.hpp"
#include "detsum/subset.hpp"

namespace detsum {

/// The ideals I_j = (det(sum_{i in S} A_i) : |S| <= j) of a principal ideal
/// ring, each stored as one non-negative generator. For Z/N the generator is
/// gcd(., N) and the zero ideal is written 0.
struct IdealChain {
  Integer modulus;                  ///< 0 for Z, N for Z/N
  std::vector<Integer> generators;  ///< g_0 .. g_m

  /// g_j == g_n for every j >= n.
  bool stabilizes_at(std::size_t n) const;
  /// g_{j+1} divides g_j for every j (everything divides 0).
  bool is_ascending() const;
};

/// Elements of a finite product of prime fields.
struct SemilocalInstance {
  RingDescriptor ring;
  std::vector<RingElement> elements;

  /// Validates that `ring` is a product of prime fields and that every element lives in it.
  static SemilocalInstance make(RingDescriptor ring, std::vector<RingElement> elements);

  std::size_t n_components() const { return ring.components().size(); }
  /// Unit-subsum guarantee applies: one residue characteristic, or at most two components.
  bool guarantee_applies() const;
};

inline constexpr std::size_t kMaxIdealChainFamily = 20;

/// First non-empty S in search order with |S| <= bound and sum_{i in S} A_i
/// invertible. Over a local ring a hit exists whenever the full sum is
/// invertible and bound >= n.
std::optional<SubsetMask> find_invertible_subsum(std::span<const SquareMatrix> matrices,
                                                 std::size_t bound, ExecutionOptions exec = {});

/// A_i = diag with m1 in slot i (i = 1..n) and A_{n+1} = m2 * I over Z/N.
/// Needs m1 + m2 = 1 mod N with both m1 and m2 non-units, so the family sums
/// to the identity while no n of them sum to something invertible.
std::vector<SquareMatrix> local_counterexample_matrices(const Integer& modulus,
                                                        const Integer& m1, const Integer& m2,
                                                        std::size_t n);

/// Ideal chain of a finite family over Z or Z/N (m <= 20).
IdealChain ideal_chain(std::span<const SquareMatrix> matrices);

/// First non-empty S in search order with |S| <= bound whose element sum is a unit.
std::optional<SubsetMask> semilocal_find_unit_subsum(const SemilocalInstance& instance,
                                                     std::size_t bound,
                                                     ExecutionOptions exec = {});

/// (r_1, ..., r_n) -> diag(r_1, ..., r_n) over F_p; every component must be the same F_p.
std::vector<SquareMatrix> embed_product_to_matrices(const SemilocalInstance& instance);

/// The two mixed-characteristic families whose total is 1 but whose small
/// subsums are never units: four elements over F_2 x F_3 x F_5 (no subsum of
/// size <= 3 is a unit) and five pairwise distinct elements over
/// F_2 x F_3 x F_5 x F_7 (no proper subsum is a unit). Both are verified on
/// construction.
std::vector<SemilocalInstance> mixed_characteristic_examples();

/// Exhaustive search over m-element multisets from the product of
/// `component_fields` for families whose total is a unit while no non-empty
/// subset of size <= subset_bound sums to a unit. Results are sorted
/// multisets, in lexicographic order.
std::vector<SemilocalInstance> mine_mixed_characteristic(
    std::span<const RingDescriptor> component_fields, std::size_t m, std::size_t subset_bound);

}  // namespace detsum
