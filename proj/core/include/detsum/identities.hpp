#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detsum/matrix.hpp"
#include "detsum/ring.hpp"
#include "detsum/subset.hpp"

namespace detsum {

/// Outcome of evaluating an alternating subset identity.
struct IdentityReport {
  std::string identity_name;
  std::size_t m = 0;
  std::size_t n = 0;
  RingElement residual;
  bool holds = false;          ///< residual is the zero of its ring
  std::uint64_t term_count = 0;  ///< subsets evaluated, 2^m
};

struct SimplexReport {
  bool premise_holds = false;
  bool centroid_on_cone = false;
  /// Non-empty proper vertex subsets whose sum has non-zero determinant.
  std::vector<SubsetMask> failing_subsets;
};

struct CertificateTerm {
  SubsetMask subset;
  Integer coefficient;
};

enum class Hypothesis { Enforce, Skip };

inline constexpr std::size_t kMaxProductIdentityVars = 36;
inline constexpr std::size_t kMaxProductIdentityFamily = 22;
inline constexpr std::size_t kMaxGenericDetSize = 3;
inline constexpr std::size_t kMaxGenericDetFamily = 5;

/// sum over S of (-1)^|S| det(sum_{i in S} A_i). Zero whenever m > n.
RingElement alternating_subset_det_sum(std::span<const SquareMatrix> matrices,
                                       ExecutionOptions exec = {});

/// Expands sum over S of (-1)^|S| prod_j sum_{i in S} z_{i,j} in Z[z] with
/// z_{i,j} at flat index (i-1)*n + (j-1), and reports whether it vanishes.
/// Requires m > n (unless skipped), m*n <= 36 and m <= 22.
IdentityReport verify_product_identity(std::size_t m, std::size_t n,
                                       Hypothesis hypothesis = Hypothesis::Enforce,
                                       ExecutionOptions exec = {});

/// Coefficient of z_{i_1,1}...z_{i_n,n} in the product identity, computed by
/// summing (-1)^|S| over every S containing the indices and by the binomial
/// closed form. Throws ContractViolation if the two disagree. Indices are
/// 1-based.
Integer product_identity_coefficient(std::size_t m, std::size_t n,
                                     const std::vector<std::size_t>& indices,
                                     Hypothesis hypothesis = Hypothesis::Enforce);

/// m generic n x n matrices over Z[x] with x_{i,b,c} at flat index
/// (i-1)*n^2 + (b-1)*n + (c-1).
std::vector<SquareMatrix> generic_matrices(std::size_t m, std::size_t n);

/// Symbolic alternating determinant sum for generic matrices (n <= 3, m <= 5).
IdentityReport verify_generic_det_identity(std::size_t m, std::size_t n,
                                           Hypothesis hypothesis = Hypothesis::Enforce,
                                           ExecutionOptions exec = {});

/// Writes det(M_1 + ... + M_m) as an integer combination of det(sum_{i in S} M_i)
/// with 0 < |S| <= n by repeatedly rewriting every too-large subset through the
/// alternating identity on that subset. The result is checked symbolically
/// before it is returned. Terms come in search order.
std::vector<CertificateTerm> det_membership_certificate(std::size_t m, std::size_t n);

/// sum_T c_T det(sum_{i in T} M_i) for the given family.
RingElement expand_certificate(std::span<const CertificateTerm> terms,
                               std::span<const SquareMatrix> matrices);

/// sum_{S non-empty} (-1)^|S| (det(A_S) - det(A_S + B)) - det B, where A_S is
/// the subset sum. Always zero; `perturbations` must hold exactly n matrices.
RingElement perturbation_identity_residual(std::span<const SquareMatrix> perturbations,
                                           const SquareMatrix& base);

/// First non-empty S in search order with det(A_S + B) != det(A_S).
std::optional<SubsetMask> find_perturbing_subset(std::span<const SquareMatrix> perturbations,
                                                 const SquareMatrix& base,
                                                 ExecutionOptions exec = {});

/// sum over S of (-1)^|S| f(sum_{i in S} v_i) for homogeneous f. Zero when m > deg f.
RingElement homogeneous_alternating_sum(const SparsePoly& f,
                                        std::span<const std::vector<RingElement>> vectors);
RingElement homogeneous_alternating_sum(const SparsePoly& f,
                                        std::span<const std::vector<RingElement>> vectors,
                                        const RingDescriptor& ring);

/// For n+1 rational n x n matrices (points of the affine n^2-space), checks
/// which vertex sums of the barycentric subdivision lie on det = 0.
SimplexReport simplex_centroid_check(std::span<const SquareMatrix> points);

}  // namespace detsum
