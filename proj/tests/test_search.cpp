#include <gtest/gtest.h>

#include <algorithm>

#include "detsum/error.hpp"
#include "detsum/random.hpp"
#include "detsum/search.hpp"
#include "oracles.hpp"

using namespace detsum;
using namespace detsum::testing;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kQ = RingDescriptor::rationals();

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ContractViolation;
}

std::vector<SquareMatrix> random_family_with_invertible_total(const RingDescriptor& ring,
                                                              std::size_t n, std::size_t m,
                                                              Rng& rng) {
  for (;;) {
    std::vector<SquareMatrix> family;
    for (std::size_t i = 0; i < m; ++i) family.push_back(random_matrix(ring, n, rng));
    if (is_invertible(subset_sum(family, SubsetMask::full(m)))) return family;
  }
}

std::vector<std::string> sorted_strings(const std::vector<RingElement>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(SubsetMask, Basics) {
  SubsetMask s = SubsetMask::from_indices({0, 3}, 5);
  EXPECT_EQ(s.bits(), 9u);
  EXPECT_EQ(s.cardinality(), 2u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.to_string(), "{0,3}");
  EXPECT_THROW(SubsetMask(32, 5), Error);
  EXPECT_THROW(SubsetMask(0, 65), Error);
  EXPECT_EQ(SubsetMask::full(64).cardinality(), 64u);
}

TEST(SubsetMask, EnumerationOrder) {
  std::vector<std::uint64_t> seen;
  for_each_subset_in_order(4, 0, 4, [&](const SubsetMask& s) {
    seen.push_back(s.bits());
    return true;
  });
  ASSERT_EQ(seen.size(), 16u);
  for (std::size_t i = 1; i < seen.size(); ++i) {
    EXPECT_TRUE(search_order(SubsetMask(seen[i - 1], 4), SubsetMask(seen[i], 4)) < 0);
  }
  std::size_t count = 0;
  for_each_subset_in_order(64, 63, 64, [&](const SubsetMask&) {
    ++count;
    return true;
  });
  EXPECT_EQ(count, 65u);
}

TEST(FirstSubset, ThreadedAgreesWithSequential) {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng.below(12);
    const std::uint64_t salt = rng.next();
    auto pred = [&](const SubsetMask& s) { return ((s.bits() * 0x9E3779B97F4A7C15ull) ^ salt) % 7 == 0; };
    auto seq = first_subset_in_order(m, 1, m, pred);
    auto par = first_subset_in_order(m, 1, m, pred, {4});
    EXPECT_EQ(seq, par);
    auto brute = brute_force_first(m, m, [&](std::uint64_t b) { return pred(SubsetMask(b, m)); });
    ASSERT_EQ(seq.has_value(), brute.has_value());
    if (seq) EXPECT_EQ(seq->bits(), *brute);
  }
}

TEST(FindInvertibleSubsum, UnitMatricesNeedAllN) {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<SquareMatrix> units;
    for (std::size_t i = 0; i < n; ++i) units.push_back(SquareMatrix::unit(kQ, n, i, i));
    auto found = find_invertible_subsum(units, n);
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(*found, SubsetMask::full(n));
    if (n > 1) EXPECT_FALSE(find_invertible_subsum(units, n - 1).has_value());
  }
}

TEST(FindInvertibleSubsum, SingleInvertible) {
  std::vector<SquareMatrix> one{SquareMatrix::identity(kZ, 3)};
  EXPECT_EQ(find_invertible_subsum(one, 1), SubsetMask::full(1));
}

TEST(FindInvertibleSubsum, TooMany) {
  std::vector<SquareMatrix> family(65, SquareMatrix(kZ, 1));
  EXPECT_EQ(code_of([&] { find_invertible_subsum(family, 1); }), ErrorCode::TooManyMatrices);
}

TEST(FindInvertibleSubsum, FieldGuaranteeAndMinimality) {
  Rng rng(42);
  for (long p : {2L, 5L, 101L}) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng.below(4);
      const std::size_t m = n + 1 + rng.below(8 - n);
      auto family = random_family_with_invertible_total(field(p), n, m, rng);
      auto found = find_invertible_subsum(family, n);
      ASSERT_TRUE(found.has_value()) << "p=" << p;
      EXPECT_TRUE(is_invertible(subset_sum(family, *found)));
      EXPECT_LE(found->cardinality(), n);
      auto brute = brute_force_first(m, n, [&](std::uint64_t b) {
        return is_unit(laplace_det(naive_subset_sum(family, b)));
      });
      ASSERT_TRUE(brute.has_value());
      EXPECT_EQ(found->bits(), *brute);
    }
  }
}

TEST(FindInvertibleSubsum, LocalRingGuarantee) {
  Rng rng(43);
  for (long q : {4L, 9L, 25L}) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng.below(3);
      const std::size_t m = n + 1 + rng.below(4);
      auto family = random_family_with_invertible_total(zmod(q), n, m, rng);
      auto found = find_invertible_subsum(family, n);
      ASSERT_TRUE(found.has_value()) << "Z/" << q;
      EXPECT_TRUE(is_invertible(subset_sum(family, *found)));
    }
  }
}

TEST(LocalCounterexample, DefeatsBoundNSearch) {
  for (auto [modulus, m1, m2] : std::vector<std::tuple<long, long, long>>{{6, 3, 4}, {10, 5, 6}}) {
    const std::size_t n = 2;
    auto family = local_counterexample_matrices(modulus, m1, m2, n);
    ASSERT_EQ(family.size(), n + 1);
    EXPECT_EQ(subset_sum(family, SubsetMask::full(n + 1)), SquareMatrix::identity(zmod(modulus), n));
    std::set<long> dets;
    for (std::uint64_t s = 1; s + 1 < (1u << (n + 1)); ++s) {
      RingElement d = laplace_det(naive_subset_sum(family, s));
      EXPECT_FALSE(is_unit(d));
      dets.insert(d.integer().get_si());
    }
    EXPECT_EQ(dets, (std::set<long>{0, m1, m2}));
    EXPECT_FALSE(find_invertible_subsum(family, n).has_value());
  }
}

TEST(LocalCounterexample, ValidatesParameters) {
  EXPECT_EQ(code_of([] { local_counterexample_matrices(6, 2, 5, 2); }),
            ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([] { local_counterexample_matrices(6, 3, 3, 2); }),
            ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([] { local_counterexample_matrices(9, 3, 7, 2); }),
            ErrorCode::InvalidParameters);
}

TEST(IdealChain, StrictAscentAtN) {
  std::vector<SquareMatrix> family{SquareMatrix::unit(kZ, 2, 0, 0), SquareMatrix::unit(kZ, 2, 1, 1)};
  auto chain = ideal_chain(family);
  EXPECT_EQ(chain.modulus, 0);
  EXPECT_EQ(chain.generators, (std::vector<Integer>{0, 0, 1}));
  EXPECT_TRUE(chain.is_ascending());
  EXPECT_TRUE(chain.stabilizes_at(2));
}

TEST(IdealChain, IdentityEntersAtOne) {
  std::vector<SquareMatrix> family{SquareMatrix::unit(kZ, 2, 0, 0), SquareMatrix::unit(kZ, 2, 1, 1),
                                   SquareMatrix::identity(kZ, 2)};
  EXPECT_EQ(ideal_chain(family).generators, (std::vector<Integer>{0, 1, 1, 1}));
}

TEST(IdealChain, ModularGenerators) {
  auto family = local_counterexample_matrices(6, 3, 4, 2);
  auto chain = ideal_chain(family);
  EXPECT_EQ(chain.modulus, 6);
  // Singletons give dets {0, 0, 4}; pairs add 3, and gcd(3, 4) = 1.
  EXPECT_EQ(chain.generators, (std::vector<Integer>{0, 2, 1, 1}));

  std::vector<SquareMatrix> zero(2, SquareMatrix(zmod(6), 2));
  EXPECT_EQ(ideal_chain(zero).generators, (std::vector<Integer>{0, 0, 0}));
  std::vector<SquareMatrix> twos{SquareMatrix::from_integers(zmod(8), {{2}}),
                                 SquareMatrix::from_integers(zmod(8), {{4}})};
  EXPECT_EQ(ideal_chain(twos).generators, (std::vector<Integer>{0, 2, 2}));
}

TEST(IdealChain, StabilizesAndDividesOnRandomFamilies) {
  Rng rng(44);
  for (int t = 0; t < 60; ++t) {
    std::vector<SquareMatrix> family;
    const long scale = (t % 3 == 0) ? 10 : 1;
    for (int i = 0; i < 4; ++i) {
      auto m = random_matrix(kZ, 3, rng, 4);
      m.set(0, 0, m(0, 0) * kZ.from_integer(scale));
      m.set(0, 1, m(0, 1) * kZ.from_integer(scale));
      m.set(0, 2, m(0, 2) * kZ.from_integer(scale));
      family.push_back(std::move(m));
    }
    auto chain = ideal_chain(family);
    ASSERT_EQ(chain.generators.size(), 5u);
    EXPECT_TRUE(chain.is_ascending());
    EXPECT_TRUE(chain.stabilizes_at(3));
    const Integer full = det(subset_sum(family, SubsetMask::full(4))).integer();
    const Integer& g3 = chain.generators[3];
    EXPECT_TRUE(g3 == 0 ? full == 0 : mpz_divisible_p(full.get_mpz_t(), g3.get_mpz_t()) != 0);
    if (scale == 10) EXPECT_EQ(g3 % 10, 0);
  }
}

TEST(IdealChain, Errors) {
  std::vector<SquareMatrix> q(2, SquareMatrix(kQ, 2));
  EXPECT_EQ(code_of([&] { ideal_chain(q); }), ErrorCode::UnsupportedRing);
  std::vector<SquareMatrix> many(21, SquareMatrix(kZ, 1));
  EXPECT_EQ(code_of([&] { ideal_chain(many); }), ErrorCode::TooManyMatrices);
}

TEST(Semilocal, Examples) {
  auto f55 = product_of({5, 5});
  auto inst = SemilocalInstance::make(f55, {tuple(f55, {1, 0}), tuple(f55, {0, 1}), tuple(f55, {1, 1})});
  EXPECT_EQ(semilocal_find_unit_subsum(inst, 2), SubsetMask::from_indices({2}, 3));

  auto examples = mixed_characteristic_examples();
  ASSERT_EQ(examples.size(), 2u);
  const auto& a = examples[0];
  EXPECT_FALSE(semilocal_find_unit_subsum(a, 3).has_value());
  EXPECT_EQ(semilocal_find_unit_subsum(a, 4), SubsetMask::full(4));
  EXPECT_FALSE(a.guarantee_applies());
}

TEST(Semilocal, ExampleInstancesMatchTheirDefinition) {
  auto examples = mixed_characteristic_examples();
  const auto& a = examples[0];
  auto r = a.ring;
  EXPECT_EQ(a.elements[0], tuple(r, {0, 1, 1}));
  EXPECT_EQ(a.elements[1], tuple(r, {1, 2, 0}));
  EXPECT_EQ(a.elements[2], tuple(r, {1, 2, 0}));
  EXPECT_EQ(a.elements[3], tuple(r, {1, 2, 0}));
  EXPECT_EQ(a.elements[0] + a.elements[1], tuple(r, {1, 0, 1}));
  RingElement total = r.zero();
  for (const auto& e : a.elements) total += e;
  EXPECT_TRUE(total.is_one());
  // All 14 proper non-empty subsets by brute force.
  for (std::uint64_t s = 1; s < 15; ++s) {
    RingElement sum = r.zero();
    for (std::size_t i = 0; i < 4; ++i)
      if ((s >> i) & 1u) sum += a.elements[i];
    EXPECT_FALSE(is_unit(sum)) << s;
  }

  const auto& b = examples[1];
  auto rb = b.ring;
  ASSERT_EQ(b.elements.size(), 5u);
  EXPECT_EQ(b.elements[4], tuple(rb, {0, 1, 1, 4}));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) EXPECT_FALSE(b.elements[i] == b.elements[j]);
  for (std::uint64_t s = 1; s < 31; ++s) {
    RingElement sum = rb.zero();
    for (std::size_t i = 0; i < 5; ++i)
      if ((s >> i) & 1u) sum += b.elements[i];
    EXPECT_FALSE(is_unit(sum)) << s;
  }
}

TEST(Semilocal, EqualCharacteristicGuarantee) {
  Rng rng(45);
  for (long p : {2L, 3L, 5L}) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng.below(4);
      std::vector<RingDescriptor> parts(n, field(p));
      auto ring = RingDescriptor::product(parts);
      const std::size_t m = 1 + rng.below(8);
      std::vector<RingElement> elems;
      RingElement total = ring.zero();
      do {
        elems.clear();
        total = ring.zero();
        for (std::size_t i = 0; i < m; ++i) {
          elems.push_back(random_element(ring, rng));
          total += elems.back();
        }
      } while (!is_unit(total));
      auto inst = SemilocalInstance::make(ring, elems);
      EXPECT_TRUE(inst.guarantee_applies());
      auto found = semilocal_find_unit_subsum(inst, n);
      ASSERT_TRUE(found.has_value());
      EXPECT_LE(found->cardinality(), n);
    }
  }
}

TEST(Embedding, Examples) {
  auto f33 = product_of({3, 3});
  auto inst = SemilocalInstance::make(f33, {tuple(f33, {1, 2}), tuple(f33, {1, 0})});
  auto ms = embed_product_to_matrices(inst);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0], SquareMatrix::from_integers(field(3), {{1, 0}, {0, 2}}));
  EXPECT_EQ(det(ms[0]), field(3).from_integer(2));
  EXPECT_TRUE(is_invertible(ms[0]));
  EXPECT_FALSE(is_invertible(ms[1]));
  EXPECT_FALSE(is_unit(inst.elements[1]));
}

TEST(Embedding, MixedFieldsRejected) {
  auto examples = mixed_characteristic_examples();
  EXPECT_EQ(code_of([&] { embed_product_to_matrices(examples[0]); }),
            ErrorCode::MixedComponentFields);
}

TEST(Embedding, UnitnessCommutesWithEmbedding) {
  Rng rng(46);
  for (long p : {2L, 3L, 5L}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + rng.below(4);
      auto ring = RingDescriptor::product(std::vector<RingDescriptor>(n, field(p)));
      std::vector<RingElement> elems;
      for (std::size_t i = 0; i < 5; ++i) elems.push_back(random_element(ring, rng));
      auto inst = SemilocalInstance::make(ring, elems);
      auto ms = embed_product_to_matrices(inst);
      for_each_subset_in_order(5, 1, 5, [&](const SubsetMask& s) {
        RingElement sum = ring.zero();
        for (auto i : s.indices()) sum += elems[i];
        EXPECT_EQ(is_unit(sum), is_invertible(subset_sum(ms, s)));
        return true;
      });
      auto via_matrices = find_invertible_subsum(ms, n);
      EXPECT_EQ(via_matrices, semilocal_find_unit_subsum(inst, n));
    }
  }
}

TEST(Miner, RediscoversFourElementExample) {
  std::vector<RingDescriptor> fields{field(2), field(3), field(5)};
  auto found = mine_mixed_characteristic(fields, 4, 3);
  ASSERT_FALSE(found.empty());
  auto target = sorted_strings(mixed_characteristic_examples()[0].elements);
  bool hit = false;
  for (const auto& inst : found) {
    EXPECT_EQ(inst.elements.size(), 4u);
    EXPECT_FALSE(semilocal_find_unit_subsum(inst, 3).has_value());
    hit = hit || sorted_strings(inst.elements) == target;
  }
  EXPECT_TRUE(hit);
}

TEST(Miner, NoCounterexamplesWithTwoComponentsOrEqualCharacteristic) {
  for (std::size_t m = 1; m <= 5; ++m) {
    std::vector<RingDescriptor> f22{field(2), field(2)};
    EXPECT_TRUE(mine_mixed_characteristic(f22, m, 2).empty()) << m;
    std::vector<RingDescriptor> f23{field(2), field(3)};
    EXPECT_TRUE(mine_mixed_characteristic(f23, m, 2).empty()) << m;
  }
  std::vector<RingDescriptor> f333{field(3), field(3), field(3)};
  EXPECT_TRUE(mine_mixed_characteristic(f333, 4, 3).empty());
}

TEST(Miner, Limits) {
  std::vector<RingDescriptor> big{field(11)};
  EXPECT_EQ(code_of([&] { mine_mixed_characteristic(big, 2, 1); }), ErrorCode::SearchSpaceTooLarge);
  std::vector<RingDescriptor> f2{field(2)};
  EXPECT_EQ(code_of([&] { mine_mixed_characteristic(f2, 6, 1); }), ErrorCode::SearchSpaceTooLarge);
  std::vector<RingDescriptor> four{field(2), field(3), field(5), field(7)};
  EXPECT_EQ(code_of([&] { mine_mixed_characteristic(four, 5, 4); }),
            ErrorCode::SearchSpaceTooLarge);
}
