#include "fuzz.hpp"

#include <functional>

#include "detsum/error.hpp"
#include "detsum/identities.hpp"
#include "detsum/random.hpp"
#include "detsum/search.hpp"
#include "serialize.hpp"

namespace detsum::cli {

namespace {

using Trial = std::function<bool(Rng&, ExecutionOptions)>;

struct Suite {
  std::string name;
  Trial trial;
};

std::vector<RingDescriptor> sample_rings() {
  const auto f = [](long p) { return RingDescriptor::prime_field(p); };
  return {RingDescriptor::integers(),
          RingDescriptor::rationals(),
          f(2),
          f(7),
          RingDescriptor::mod_ring(6),
          RingDescriptor::mod_ring(10),
          RingDescriptor::mod_ring(9),
          RingDescriptor::product({f(2), f(3), f(5)})};
}

template <class T>
const T& pick(const std::vector<T>& xs, Rng& rng) {
  return xs[rng.below(xs.size())];
}

std::vector<SquareMatrix> random_family(const RingDescriptor& ring, std::size_t n, std::size_t m,
                                        Rng& rng) {
  std::vector<SquareMatrix> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(random_matrix(ring, n, rng));
  return out;
}

bool ring_axioms(Rng& rng, ExecutionOptions) {
  const auto ring = pick(sample_rings(), rng);
  const auto a = random_element(ring, rng);
  const auto b = random_element(ring, rng);
  const auto c = random_element(ring, rng);
  return (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * b == b * a &&
         a * (b + c) == a * b + a * c && a - a == ring.zero() && a * ring.one() == a;
}

bool det_cross_validation(Rng& rng, ExecutionOptions) {
  const auto ring = pick(sample_rings(), rng);
  const std::size_t n = 1 + rng.below(6);
  const auto a = random_matrix(ring, n, rng);
  const RingElement reference = det(a, DetAlgorithm::MinorExpansion);
  if (det(a, DetAlgorithm::Leibniz) != reference) return false;
  if (det(a) != reference) return false;
  if (ring.supports_exact_division() && det(a, DetAlgorithm::Bareiss) != reference) return false;
  if (ring.is_field() && det(a, DetAlgorithm::Elimination) != reference) return false;
  return true;
}

bool alternating_sum(Rng& rng, ExecutionOptions exec) {
  const auto ring = pick(sample_rings(), rng);
  const std::size_t n = 1 + rng.below(3);
  const std::size_t m = n + 1 + rng.below(3);
  return alternating_subset_det_sum(random_family(ring, n, m, rng), exec).is_zero();
}

bool perturbation(Rng& rng, ExecutionOptions exec) {
  const std::vector<RingDescriptor> rings{RingDescriptor::integers(), RingDescriptor::mod_ring(10)};
  const auto& ring = pick(rings, rng);
  const std::size_t n = 1 + rng.below(3);
  const auto family = random_family(ring, n, n, rng);
  const auto base = random_matrix(ring, n, rng);
  if (!perturbation_identity_residual(family, base).is_zero()) return false;
  // A non-zero det B forces some subset to move the determinant.
  return det(base).is_zero() || find_perturbing_subset(family, base, exec).has_value();
}

bool local_search(Rng& rng, ExecutionOptions exec) {
  const std::vector<RingDescriptor> rings{RingDescriptor::mod_ring(4), RingDescriptor::mod_ring(9),
                                          RingDescriptor::mod_ring(25), RingDescriptor::prime_field(5)};
  const auto& ring = pick(rings, rng);
  const std::size_t n = 1 + rng.below(3);
  const std::size_t m = n + 1 + rng.below(4);
  auto family = random_family(ring, n, m, rng);
  if (!is_invertible(subset_sum(family, SubsetMask::full(m)))) return true;
  auto found = find_invertible_subsum(family, n, exec);
  return found && found->cardinality() <= n && is_invertible(subset_sum(family, *found));
}

bool ideal_chain_stabilizes(Rng& rng, ExecutionOptions) {
  const std::vector<RingDescriptor> rings{RingDescriptor::integers(), RingDescriptor::mod_ring(12)};
  const auto& ring = pick(rings, rng);
  const std::size_t n = 1 + rng.below(3);
  const std::size_t m = 1 + rng.below(6);
  const auto chain = ideal_chain(random_family(ring, n, m, rng));
  return chain.is_ascending() && chain.stabilizes_at(n);
}

bool semilocal_equal_characteristic(Rng& rng, ExecutionOptions exec) {
  const long p = std::vector<long>{2, 3, 5}[rng.below(3)];
  const std::size_t k = 1 + rng.below(4);
  const auto ring = RingDescriptor::product(std::vector<RingDescriptor>(k, RingDescriptor::prime_field(p)));
  const std::size_t m = 1 + rng.below(7);
  std::vector<RingElement> xs;
  RingElement total = ring.zero();
  for (std::size_t i = 0; i < m; ++i) {
    xs.push_back(random_element(ring, rng));
    total += xs.back();
  }
  if (!is_unit(total)) return true;
  auto inst = SemilocalInstance::make(ring, xs);
  auto found = semilocal_find_unit_subsum(inst, k, exec);
  return found && embed_product_to_matrices(inst).size() == m &&
         find_invertible_subsum(embed_product_to_matrices(inst), k, exec) == found;
}

bool homogeneous_sum(Rng& rng, ExecutionOptions) {
  const auto ring = pick(sample_rings(), rng);
  const std::size_t vars = 1 + rng.below(3);
  const auto degree = static_cast<std::uint32_t>(rng.below(4));
  const auto f = random_homogeneous_poly(vars, degree, 4, rng);
  const std::size_t m = degree + 1 + rng.below(2);
  std::vector<std::vector<RingElement>> vs(m);
  for (auto& v : vs) {
    for (std::size_t k = 0; k < vars; ++k) v.push_back(random_element(ring, rng));
  }
  return homogeneous_alternating_sum(f, vs, ring).is_zero();
}

bool simplex(Rng& rng, ExecutionOptions) {
  const auto q = RingDescriptor::rationals();
  const std::size_t n = 1 + rng.below(3);
  std::vector<SquareMatrix> points;
  if (rng.coin()) {
    // Shared zero first row keeps every vertex sum singular.
    for (std::size_t i = 0; i <= n; ++i) {
      auto a = random_matrix(q, n, rng);
      for (std::size_t c = 0; c < n; ++c) a.set(0, c, q.zero());
      points.push_back(std::move(a));
    }
  } else {
    points = random_family(q, n, n + 1, rng);
  }
  const auto report = simplex_centroid_check(points);
  return !report.premise_holds || report.centroid_on_cone;
}

bool serialization_roundtrip(Rng& rng, ExecutionOptions) {
  auto ring = pick(sample_rings(), rng);
  if (rng.below(4) == 0) ring = RingDescriptor::poly_over_z(2);
  const std::size_t n = 1 + rng.below(3);
  MatrixDocument doc{ring, n, random_family(ring, n, 1 + rng.below(3), rng), std::nullopt};
  const Json first = matrices_to_json(doc);
  const MatrixDocument again = load_matrices(parse_document(first.dump()));
  return again.matrices == doc.matrices && matrices_to_json(again).dump() == first.dump();
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"ring_axioms", ring_axioms},
      {"det_cross_validation", det_cross_validation},
      {"alternating_sum", alternating_sum},
      {"perturbation", perturbation},
      {"local_search", local_search},
      {"ideal_chain", ideal_chain_stabilizes},
      {"semilocal_equal_characteristic", semilocal_equal_characteristic},
      {"homogeneous_sum", homogeneous_sum},
      {"simplex", simplex},
      {"serialization_roundtrip", serialization_roundtrip},
  };
  return all;
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ seed;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::vector<std::string> fuzz_suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites()) names.push_back(s.name);
  return names;
}

std::vector<SuiteResult> run_fuzz(std::uint64_t seed, std::uint64_t trials,
                                  const std::vector<std::string>& only, ExecutionOptions exec) {
  for (const auto& name : only) {
    bool known = false;
    for (const auto& s : suites()) known = known || s.name == name;
    if (!known) throw Error(ErrorCode::InvalidParameters, "unknown fuzz suite \"" + name + "\"");
  }
  std::vector<SuiteResult> results;
  for (const auto& suite : suites()) {
    if (!only.empty() && std::find(only.begin(), only.end(), suite.name) == only.end()) continue;
    Rng rng(suite_seed(seed, suite.name));
    SuiteResult r{suite.name, trials, 0, std::nullopt};
    for (std::uint64_t t = 0; t < trials; ++t) {
      bool ok = false;
      try {
        ok = suite.trial(rng, exec);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        ++r.failures;
        if (!r.first_failing_trial) r.first_failing_trial = t;
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace detsum::cli
