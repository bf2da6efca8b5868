#include "detsum/identities.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "detsum/error.hpp"
#include "parallel.hpp"

namespace detsum {

namespace {

std::uint64_t last_mask(std::size_t m) {
  return m >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << m) - 1;
}

std::uint64_t term_count(std::size_t m) {
  return m >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << m;
}

bool odd_cardinality(std::uint64_t bits) { return (std::popcount(bits) & 1) != 0; }

RingElement signed_fold(std::size_t m, const RingDescriptor& ring, ExecutionOptions exec,
                        const std::function<RingElement(std::uint64_t)>& term) {
  return detail::chunked_fold(
      0, last_mask(m), exec.threads, ring.zero(),
      [&](RingElement& acc, std::uint64_t bits) {
        RingElement t = term(bits);
        acc = odd_cardinality(bits) ? acc - t : acc + t;
      },
      [](RingElement& acc, RingElement&& part) { acc += part; });
}

void require_hypothesis(std::size_t m, std::size_t n, Hypothesis hypothesis) {
  if (hypothesis == Hypothesis::Enforce && m <= n) {
    throw Error(ErrorCode::HypothesisViolation,
                "needs m > n, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
  }
}

void require_positive(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::InvalidParameters, "m and n must be positive");
  }
}

Integer binomial(std::size_t top, std::size_t bottom) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), top, bottom);
  return out;
}

}  // namespace

RingElement alternating_subset_det_sum(std::span<const SquareMatrix> matrices,
                                       ExecutionOptions exec) {
  if (matrices.size() > SubsetMask::kMaxFamily) {
    throw Error(ErrorCode::TooManyMatrices,
                std::to_string(matrices.size()) + " matrices, at most 64 supported");
  }
  check_family(matrices);
  const std::size_t m = matrices.size();
  return signed_fold(m, matrices.front().ring(), exec, [&](std::uint64_t bits) {
    return det(subset_sum(matrices, SubsetMask(bits, m)));
  });
}

IdentityReport verify_product_identity(std::size_t m, std::size_t n, Hypothesis hypothesis,
                                       ExecutionOptions exec) {
  require_positive(m, n);
  require_hypothesis(m, n, hypothesis);
  if (m * n > kMaxProductIdentityVars || m > kMaxProductIdentityFamily) {
    throw Error(ErrorCode::SizeLimit, "product identity capped at m*n <= 36 and m <= 22");
  }
  const std::size_t vars = m * n;

  // Every monomial picks one row per column, so it is indexed by (i_1, ..., i_n)
  // read as a base-m number. Coefficients are bounded by 2^m in magnitude.
  std::size_t cells = 1;
  for (std::size_t j = 0; j < n; ++j) cells *= m;
  using Coefficients = std::vector<std::int64_t>;

  Coefficients dense = detail::chunked_fold(
      0, last_mask(m), exec.threads, Coefficients(cells, 0),
      [&](Coefficients& acc, std::uint64_t bits) {
        if (bits == 0) return;
        const std::int64_t sign = odd_cardinality(bits) ? -1 : 1;
        const std::vector<std::size_t> rows = SubsetMask(bits, m).indices();
        std::vector<std::size_t> pick(n, 0);
        for (;;) {
          std::size_t cell = 0;
          for (std::size_t j = 0; j < n; ++j) cell = cell * m + rows[pick[j]];
          acc[cell] += sign;
          std::size_t j = n;
          while (j > 0 && ++pick[j - 1] == rows.size()) pick[--j] = 0;
          if (j == 0) break;
        }
      },
      [](Coefficients& acc, Coefficients&& part) {
        for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += part[c];
      });

  SparsePoly sum(vars);
  std::vector<std::uint32_t> exps(vars, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (dense[cell] == 0) continue;
    std::size_t rest = cell;
    for (std::size_t j = n; j-- > 0;) {
      exps[(rest % m) * n + j] = 1;
      rest /= m;
    }
    sum.add_term(exps, Integer(static_cast<long>(dense[cell])));
    std::fill(exps.begin(), exps.end(), 0);
  }

  IdentityReport report;
  report.identity_name = "product_identity";
  report.m = m;
  report.n = n;
  report.holds = sum.is_zero();
  report.residual = RingDescriptor::poly_over_z(vars).poly(std::move(sum));
  report.term_count = term_count(m);
  return report;
}

Integer product_identity_coefficient(std::size_t m, std::size_t n,
                                     const std::vector<std::size_t>& indices,
                                     Hypothesis hypothesis) {
  require_positive(m, n);
  require_hypothesis(m, n, hypothesis);
  if (indices.size() != n) {
    throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(n) + " indices, got " +
                                              std::to_string(indices.size()));
  }
  if (m > kMaxProductIdentityFamily) {
    throw Error(ErrorCode::SizeLimit, "coefficient enumeration capped at m <= 22");
  }
  std::uint64_t required = 0;
  for (auto i : indices) {
    if (i < 1 || i > m) {
      throw Error(ErrorCode::InvalidParameters,
                  "index " + std::to_string(i) + " outside [1, " + std::to_string(m) + "]");
    }
    required |= std::uint64_t{1} << (i - 1);
  }

  // Route 1: every subset containing the required indices contributes (-1)^|S|.
  Integer enumerated = 0;
  for (std::uint64_t bits = 0;; ++bits) {
    if ((bits & required) == required) enumerated += odd_cardinality(bits) ? -1 : 1;
    if (bits == last_mask(m)) break;
  }

  // Route 2: S = required + S' with S' any subset of the remaining m - d indices.
  const std::size_t distinct = static_cast<std::size_t>(std::popcount(required));
  Integer closed = 0;
  for (std::size_t l = 0; l <= m - distinct; ++l) {
    Integer term = binomial(m - distinct, l);
    closed += ((l + distinct) % 2 == 0) ? term : Integer(-term);
  }

  if (enumerated != closed) {
    throw Error(ErrorCode::ContractViolation, "coefficient routes disagree: " +
                                                  enumerated.get_str() + " vs " +
                                                  closed.get_str());
  }
  return enumerated;
}

std::vector<SquareMatrix> generic_matrices(std::size_t m, std::size_t n) {
  const std::size_t vars = m * n * n;
  const RingDescriptor ring = RingDescriptor::poly_over_z(vars);
  std::vector<SquareMatrix> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<RingElement> entries;
    entries.reserve(n * n);
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        entries.push_back(ring.poly(SparsePoly::variable(vars, i * n * n + b * n + c)));
      }
    }
    out.emplace_back(ring, n, std::move(entries));
  }
  return out;
}

namespace {

void require_generic_caps(std::size_t m, std::size_t n) {
  if (n > kMaxGenericDetSize || m > kMaxGenericDetFamily) {
    throw Error(ErrorCode::SizeLimit, "generic determinant identity capped at n <= 3, m <= 5");
  }
}

}  // namespace

IdentityReport verify_generic_det_identity(std::size_t m, std::size_t n, Hypothesis hypothesis,
                                           ExecutionOptions exec) {
  require_positive(m, n);
  require_hypothesis(m, n, hypothesis);
  require_generic_caps(m, n);
  const auto matrices = generic_matrices(m, n);
  IdentityReport report;
  report.identity_name = "generic_det_identity";
  report.m = m;
  report.n = n;
  report.residual = alternating_subset_det_sum(matrices, exec);
  report.holds = report.residual.is_zero();
  report.term_count = term_count(m);
  return report;
}

std::vector<CertificateTerm> det_membership_certificate(std::size_t m, std::size_t n) {
  require_positive(m, n);
  require_hypothesis(m, n, Hypothesis::Enforce);
  require_generic_caps(m, n);

  const std::uint64_t full = last_mask(m);
  std::vector<Integer> coeff(full + 1, Integer(0));
  coeff[full] = 1;
  // From the identity on a family S with |S| > n:
  //   det(sum_S) = sum_{T proper subset of S} (-1)^(|S|-|T|+1) det(sum_T).
  // Rewriting the largest subsets first never revisits a finished level.
  for (std::size_t card = m; card > n; --card) {
    for (std::uint64_t s = 0; s <= full; ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) != card || coeff[s] == 0) continue;
      const Integer c = coeff[s];
      coeff[s] = 0;
      for (std::uint64_t t = (s - 1) & s;; t = (t - 1) & s) {
        const bool flip = ((card - static_cast<std::size_t>(std::popcount(t)) + 1) % 2) != 0;
        coeff[t] += flip ? Integer(-c) : c;
        if (t == 0) break;
      }
    }
  }

  std::vector<CertificateTerm> terms;
  // The empty subset has det(0) = 0 and is dropped.
  for_each_subset_in_order(m, 1, n, [&](const SubsetMask& s) {
    if (coeff[s.bits()] != 0) terms.push_back({s, coeff[s.bits()]});
    return true;
  });

  const auto matrices = generic_matrices(m, n);
  const RingElement target = det(subset_sum(matrices, SubsetMask::full(m)));
  if (!(expand_certificate(terms, matrices) == target)) {
    throw Error(ErrorCode::ContractViolation, "membership certificate failed verification");
  }
  return terms;
}

RingElement expand_certificate(std::span<const CertificateTerm> terms,
                               std::span<const SquareMatrix> matrices) {
  check_family(matrices);
  const RingDescriptor& ring = matrices.front().ring();
  RingElement sum = ring.zero();
  for (const auto& term : terms) {
    sum += ring.from_integer(term.coefficient) * det(subset_sum(matrices, term.subset));
  }
  return sum;
}

namespace {

void check_perturbation_shape(std::span<const SquareMatrix> perturbations,
                              const SquareMatrix& base) {
  check_family(perturbations);
  const SquareMatrix& first = perturbations.front();
  if (perturbations.size() != first.size()) {
    throw Error(ErrorCode::ShapeMismatch, "need exactly n = " + std::to_string(first.size()) +
                                              " perturbation matrices, got " +
                                              std::to_string(perturbations.size()));
  }
  if (base.size() != first.size()) {
    throw Error(ErrorCode::ShapeMismatch, "base matrix size differs from the family");
  }
  if (!(base.ring() == first.ring())) {
    throw Error(ErrorCode::RingMismatch, "base matrix ring differs from the family");
  }
}

}  // namespace

RingElement perturbation_identity_residual(std::span<const SquareMatrix> perturbations,
                                           const SquareMatrix& base) {
  check_perturbation_shape(perturbations, base);
  const std::size_t n = perturbations.size();
  const RingDescriptor& ring = base.ring();
  RingElement sum = ring.zero();
  for_each_subset_in_order(n, 1, n, [&](const SubsetMask& s) {
    const SquareMatrix partial = subset_sum(perturbations, s);
    RingElement diff = det(partial) - det(partial + base);
    sum = (s.cardinality() % 2) ? sum - diff : sum + diff;
    return true;
  });
  return sum - det(base);
}

std::optional<SubsetMask> find_perturbing_subset(std::span<const SquareMatrix> perturbations,
                                                 const SquareMatrix& base,
                                                 ExecutionOptions exec) {
  check_perturbation_shape(perturbations, base);
  const std::size_t n = perturbations.size();
  return first_subset_in_order(
      n, 1, n,
      [&](const SubsetMask& s) {
        const SquareMatrix partial = subset_sum(perturbations, s);
        return !(det(partial + base) == det(partial));
      },
      exec);
}

RingElement homogeneous_alternating_sum(const SparsePoly& f,
                                        std::span<const std::vector<RingElement>> vectors) {
  for (const auto& v : vectors) {
    if (!v.empty()) return homogeneous_alternating_sum(f, vectors, v.front().ring());
  }
  throw Error(ErrorCode::ArityMismatch, "cannot infer the ring from empty vectors");
}

RingElement homogeneous_alternating_sum(const SparsePoly& f,
                                        std::span<const std::vector<RingElement>> vectors,
                                        const RingDescriptor& ring) {
  if (!is_homogeneous(f)) {
    throw Error(ErrorCode::NotHomogeneous, "polynomial " + f.to_string() + " is not homogeneous");
  }
  if (vectors.size() > SubsetMask::kMaxFamily) {
    throw Error(ErrorCode::TooManyMatrices, "at most 64 vectors supported");
  }
  for (const auto& v : vectors) {
    if (v.size() != f.var_count()) {
      throw Error(ErrorCode::ArityMismatch, "vector of length " + std::to_string(v.size()) +
                                                " for " + std::to_string(f.var_count()) +
                                                " variables");
    }
  }
  const std::size_t m = vectors.size();
  return signed_fold(m, ring, {}, [&](std::uint64_t bits) {
    std::vector<RingElement> point(f.var_count(), ring.zero());
    for (auto i : SubsetMask(bits, m).indices()) {
      for (std::size_t k = 0; k < point.size(); ++k) point[k] += vectors[i][k];
    }
    return poly_eval(f, point, ring);
  });
}

SimplexReport simplex_centroid_check(std::span<const SquareMatrix> points) {
  check_family(points);
  const std::size_t n = points.front().size();
  if (points.size() != n + 1) {
    throw Error(ErrorCode::ShapeMismatch, "need n + 1 = " + std::to_string(n + 1) +
                                              " points, got " + std::to_string(points.size()));
  }
  if (points.front().ring().kind() != RingKind::Rationals) {
    throw Error(ErrorCode::UnsupportedRing, "simplex check runs over Q only");
  }
  SimplexReport report;
  // Scaling by 1/|S| does not change whether det vanishes.
  for_each_subset_in_order(n + 1, 1, n, [&](const SubsetMask& s) {
    if (!det(subset_sum(points, s)).is_zero()) report.failing_subsets.push_back(s);
    return true;
  });
  report.premise_holds = report.failing_subsets.empty();
  report.centroid_on_cone = det(subset_sum(points, SubsetMask::full(n + 1))).is_zero();
  return report;
}

}  // namespace detsum
