#include "detsum/search.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "detsum/error.hpp"

namespace detsum {

namespace {

inline constexpr std::size_t kMaxMinerFields = 4;
inline constexpr unsigned long kMaxMinerFieldSize = 7;
inline constexpr std::size_t kMaxMinerFamily = 5;
inline constexpr double kMaxMinerTuples = 2e7;

bool is_product_of_prime_fields(const RingDescriptor& ring) {
  if (ring.kind() != RingKind::Product) return false;
  return std::all_of(ring.components().begin(), ring.components().end(),
                     [](const RingDescriptor& c) { return c.kind() == RingKind::PrimeField; });
}

RingElement element_sum(const SemilocalInstance& instance, const SubsetMask& s) {
  RingElement sum = instance.ring.zero();
  for (auto i : s.indices()) sum += instance.elements[i];
  return sum;
}

double multiset_count(std::size_t choices, std::size_t m) {
  double out = 1;
  for (std::size_t k = 0; k < m; ++k) {
    out = out * static_cast<double>(choices + k) / static_cast<double>(k + 1);
  }
  return out;
}

}  // namespace

bool IdealChain::stabilizes_at(std::size_t n) const {
  for (std::size_t j = n; j < generators.size(); ++j) {
    if (generators[j] != generators[n]) return false;
  }
  return true;
}

bool IdealChain::is_ascending() const {
  for (std::size_t j = 0; j + 1 < generators.size(); ++j) {
    const Integer& larger = generators[j + 1];
    const Integer& smaller = generators[j];
    if (smaller == 0) continue;
    if (larger == 0 || mpz_divisible_p(smaller.get_mpz_t(), larger.get_mpz_t()) == 0) {
      return false;
    }
  }
  return true;
}

SemilocalInstance SemilocalInstance::make(RingDescriptor ring,
                                          std::vector<RingElement> elements) {
  if (!is_product_of_prime_fields(ring)) {
    throw Error(ErrorCode::UnsupportedRing,
                "semilocal instances live in a product of prime fields, got " + ring.to_string());
  }
  for (const auto& e : elements) {
    if (!(e.ring() == ring)) {
      throw Error(ErrorCode::RingMismatch,
                  "element in " + e.ring().to_string() + ", expected " + ring.to_string());
    }
  }
  return SemilocalInstance{std::move(ring), std::move(elements)};
}

bool SemilocalInstance::guarantee_applies() const {
  const auto& parts = ring.components();
  if (parts.size() <= 2) return true;
  return std::all_of(parts.begin(), parts.end(), [&](const RingDescriptor& c) {
    return c.modulus() == parts.front().modulus();
  });
}

std::optional<SubsetMask> find_invertible_subsum(std::span<const SquareMatrix> matrices,
                                                 std::size_t bound, ExecutionOptions exec) {
  if (matrices.size() > SubsetMask::kMaxFamily) {
    throw Error(ErrorCode::TooManyMatrices,
                std::to_string(matrices.size()) + " matrices, at most 64 supported");
  }
  check_family(matrices);
  return first_subset_in_order(
      matrices.size(), 1, bound,
      [&](const SubsetMask& s) { return is_invertible(subset_sum(matrices, s)); }, exec);
}

std::vector<SquareMatrix> local_counterexample_matrices(const Integer& modulus,
                                                        const Integer& m1, const Integer& m2,
                                                        std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "n must be positive");
  if (modulus < 2) throw Error(ErrorCode::InvalidParameters, "modulus must be >= 2");
  const RingDescriptor ring = RingDescriptor::mod_ring(modulus);
  const RingElement a = ring.from_integer(m1);
  const RingElement b = ring.from_integer(m2);
  if (!(a + b).is_one()) {
    throw Error(ErrorCode::InvalidParameters, m1.get_str() + " + " + m2.get_str() +
                                                  " is not 1 mod " + modulus.get_str());
  }
  if (is_unit(a) || is_unit(b)) {
    throw Error(ErrorCode::InvalidParameters,
                (is_unit(a) ? m1 : m2).get_str() + " is a unit mod " + modulus.get_str());
  }
  std::vector<SquareMatrix> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    SquareMatrix d(ring, n);
    d.set(i, i, a);
    out.push_back(std::move(d));
  }
  out.push_back(SquareMatrix::diagonal(ring, std::vector<RingElement>(n, b)));
  return out;
}

IdealChain ideal_chain(std::span<const SquareMatrix> matrices) {
  check_family(matrices);
  const RingDescriptor& ring = matrices.front().ring();
  if (ring.kind() != RingKind::Integers && ring.kind() != RingKind::ModRing) {
    throw Error(ErrorCode::UnsupportedRing, "ideal chains need Z or Z/N, got " + ring.to_string());
  }
  const std::size_t m = matrices.size();
  if (m > kMaxIdealChainFamily) {
    throw Error(ErrorCode::TooManyMatrices,
                std::to_string(m) + " matrices, ideal chains capped at 20");
  }

  // by_size[k] = gcd of det(sum_S) over |S| = k
  std::vector<Integer> by_size(m + 1, Integer(0));
  for_each_subset_in_order(m, 1, m, [&](const SubsetMask& s) {
    Integer d = det(subset_sum(matrices, s)).integer();
    by_size[s.cardinality()] = gcd_nonneg(by_size[s.cardinality()], d);
    return true;
  });

  IdealChain chain;
  chain.modulus = ring.kind() == RingKind::ModRing ? ring.modulus() : Integer(0);
  chain.generators.assign(1, Integer(0));
  Integer running = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    running = gcd_nonneg(running, by_size[j]);
    Integer g = running;
    if (chain.modulus != 0 && g != 0) g = gcd_nonneg(g, chain.modulus);
    chain.generators.push_back(g);
  }
  return chain;
}

std::optional<SubsetMask> semilocal_find_unit_subsum(const SemilocalInstance& instance,
                                                     std::size_t bound,
                                                     ExecutionOptions exec) {
  if (instance.elements.size() > SubsetMask::kMaxFamily) {
    throw Error(ErrorCode::TooManyElements, std::to_string(instance.elements.size()) +
                                                " elements, at most 64 supported");
  }
  return first_subset_in_order(
      instance.elements.size(), 1, bound,
      [&](const SubsetMask& s) { return is_unit(element_sum(instance, s)); }, exec);
}

std::vector<SquareMatrix> embed_product_to_matrices(const SemilocalInstance& instance) {
  const auto& parts = instance.ring.components();
  for (const auto& c : parts) {
    if (!(c == parts.front())) {
      throw Error(ErrorCode::MixedComponentFields,
                  "embedding needs one common prime field, got " + instance.ring.to_string());
    }
  }
  std::vector<SquareMatrix> out;
  out.reserve(instance.elements.size());
  for (const auto& e : instance.elements) {
    out.push_back(SquareMatrix::diagonal(parts.front(), e.components()));
  }
  return out;
}

namespace {

RingElement tuple_of(const RingDescriptor& ring, const std::vector<long>& values) {
  std::vector<RingElement> parts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    parts.push_back(ring.components()[i].from_integer(values[i]));
  }
  return ring.tuple(std::move(parts));
}

void require_no_small_unit_subsum(const SemilocalInstance& instance, std::size_t bound) {
  if (!is_unit(element_sum(instance, SubsetMask::full(instance.elements.size())))) {
    throw Error(ErrorCode::ContractViolation, "example total is not a unit");
  }
  if (semilocal_find_unit_subsum(instance, bound)) {
    throw Error(ErrorCode::ContractViolation, "example has a small unit subsum");
  }
}

}  // namespace

std::vector<SemilocalInstance> mixed_characteristic_examples() {
  auto field = [](long p) { return RingDescriptor::prime_field(p); };
  std::vector<SemilocalInstance> out;

  {
    const RingDescriptor ring = RingDescriptor::product({field(2), field(3), field(5)});
    const RingElement a1 = tuple_of(ring, {0, 1, 1});
    const RingElement a2 = tuple_of(ring, {1, -1, 0});
    const RingElement a4 = ring.one() - (a1 + a2 + a2);
    out.push_back(SemilocalInstance::make(ring, {a1, a2, a2, a4}));
    require_no_small_unit_subsum(out.back(), 3);
  }
  {
    const RingDescriptor ring =
        RingDescriptor::product({field(2), field(3), field(5), field(7)});
    std::vector<RingElement> elements{tuple_of(ring, {0, 0, 0, 1})};
    for (long star : {0, 1, 2}) elements.push_back(tuple_of(ring, {1, -1, 0, star}));
    RingElement partial = ring.zero();
    for (const auto& e : elements) partial += e;
    elements.push_back(ring.one() - partial);
    out.push_back(SemilocalInstance::make(ring, std::move(elements)));
    require_no_small_unit_subsum(out.back(), out.back().elements.size() - 1);
    const auto& es = out.back().elements;
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        if (es[i] == es[j]) throw Error(ErrorCode::ContractViolation, "elements not distinct");
      }
    }
  }
  return out;
}

std::vector<SemilocalInstance> mine_mixed_characteristic(
    std::span<const RingDescriptor> component_fields, std::size_t m, std::size_t subset_bound) {
  if (component_fields.empty() || component_fields.size() > kMaxMinerFields ||
      m > kMaxMinerFamily || m == 0) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "miner supports 1..4 prime fields and 1 <= m <= 5");
  }
  std::vector<unsigned> primes;
  for (const auto& f : component_fields) {
    if (f.kind() != RingKind::PrimeField) {
      throw Error(ErrorCode::UnsupportedRing, "miner components must be prime fields, got " +
                                                  f.to_string());
    }
    if (f.modulus() > kMaxMinerFieldSize) {
      throw Error(ErrorCode::SearchSpaceTooLarge, "miner fields must have size <= 7");
    }
    primes.push_back(static_cast<unsigned>(f.modulus().get_ui()));
  }
  const std::size_t k = primes.size();

  // Elements as residue tuples in mixed-radix order. A unit by itself would be
  // a unit subsum of size 1, so only non-units can appear.
  using Residues = std::vector<unsigned>;
  std::vector<Residues> candidates;
  std::size_t total = 1;
  for (auto p : primes) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Residues digits(k);
    std::size_t rest = code;
    for (std::size_t c = k; c-- > 0;) {
      digits[c] = static_cast<unsigned>(rest % primes[c]);
      rest /= primes[c];
    }
    if (std::any_of(digits.begin(), digits.end(), [](unsigned r) { return r == 0; })) {
      candidates.push_back(std::move(digits));
    }
  }
  if (subset_bound == 0) {
    throw Error(ErrorCode::InvalidParameters, "subset bound must be positive");
  }
  if (multiset_count(candidates.size(), m) > kMaxMinerTuples) {
    throw Error(ErrorCode::SearchSpaceTooLarge, "more than 2e7 candidate families");
  }

  const RingDescriptor ring = RingDescriptor::product(
      std::vector<RingDescriptor>(component_fields.begin(), component_fields.end()));
  std::vector<SemilocalInstance> found;
  std::vector<std::size_t> pick(m, 0);
  std::vector<Residues> sums(std::size_t{1} << m, Residues(k, 0));

  auto is_unit_tuple = [](const Residues& r) {
    return std::none_of(r.begin(), r.end(), [](unsigned x) { return x == 0; });
  };

  for (;;) {
    // Subset sums by extending each mask with its highest element.
    const std::size_t full = (std::size_t{1} << m) - 1;
    bool rejected = false;
    for (std::size_t s = 1; s <= full && !rejected; ++s) {
      const std::size_t top = static_cast<std::size_t>(std::bit_width(s)) - 1;
      const Residues& rest = sums[s & ~(std::size_t{1} << top)];
      const Residues& add = candidates[pick[top]];
      for (std::size_t c = 0; c < k; ++c) sums[s][c] = (rest[c] + add[c]) % primes[c];
      const auto card = static_cast<std::size_t>(std::popcount(s));
      if (card <= subset_bound && is_unit_tuple(sums[s])) rejected = true;
    }
    if (!rejected && is_unit_tuple(sums[full])) {
      std::vector<RingElement> elements;
      for (auto idx : pick) {
        std::vector<long> values(candidates[idx].begin(), candidates[idx].end());
        elements.push_back(tuple_of(ring, values));
      }
      found.push_back(SemilocalInstance::make(ring, std::move(elements)));
    }

    // Next non-decreasing index tuple.
    std::size_t pos = m;
    while (pos > 0 && pick[pos - 1] + 1 == candidates.size()) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t j = pos; j < m; ++j) pick[j] = pick[pos - 1];
  }
  return found;
}

}  // namespace detsum
