#include <benchmark/benchmark.h>

#include "detsum/identities.hpp"
#include "detsum/random.hpp"
#include "detsum/search.hpp"

namespace {

using namespace detsum;

RingDescriptor ring_for(int64_t id) {
  switch (id) {
    case 0:
      return RingDescriptor::integers();
    case 1:
      return RingDescriptor::rationals();
    case 2:
      return RingDescriptor::prime_field(101);
    case 3:
      return RingDescriptor::mod_ring(10);
    default:
      return RingDescriptor::product({RingDescriptor::prime_field(2), RingDescriptor::prime_field(3),
                                      RingDescriptor::prime_field(5)});
  }
}

void BM_Det(benchmark::State& state, DetAlgorithm algorithm) {
  const auto ring = ring_for(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(1);
  const auto a = random_matrix(ring, n, rng);
  state.SetLabel(ring.to_string());
  for (auto _ : state) benchmark::DoNotOptimize(det(a, algorithm));
}

void BM_AlternatingSum(benchmark::State& state) {
  const auto ring = ring_for(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  Rng rng(2);
  std::vector<SquareMatrix> family;
  for (std::size_t i = 0; i < m; ++i) family.push_back(random_matrix(ring, 3, rng));
  state.SetLabel(ring.to_string());
  for (auto _ : state) benchmark::DoNotOptimize(alternating_subset_det_sum(family));
}

void BM_ProductIdentity(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(verify_product_identity(m, n));
}

void BM_GenericDetIdentity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_generic_det_identity(4, 3));
}

void BM_InvertibleSubsum(benchmark::State& state) {
  const auto ring = RingDescriptor::prime_field(101);
  Rng rng(3);
  std::vector<SquareMatrix> family;
  for (int i = 0; i < 12; ++i) family.push_back(random_matrix(ring, 3, rng));
  for (auto& a : family) a.set(0, 0, ring.zero());
  for (auto _ : state) benchmark::DoNotOptimize(find_invertible_subsum(family, 3));
}

void BM_Miner(benchmark::State& state) {
  std::vector<RingDescriptor> fields{RingDescriptor::prime_field(2), RingDescriptor::prime_field(3),
                                     RingDescriptor::prime_field(5)};
  for (auto _ : state) benchmark::DoNotOptimize(mine_mixed_characteristic(fields, 4, 3));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Det, leibniz, detsum::DetAlgorithm::Leibniz)
    ->ArgsProduct({{0, 2, 3, 4}, {4, 6, 8}});
BENCHMARK_CAPTURE(BM_Det, minor_expansion, detsum::DetAlgorithm::MinorExpansion)
    ->ArgsProduct({{0, 2, 3, 4}, {4, 6, 8, 12}});
BENCHMARK_CAPTURE(BM_Det, bareiss, detsum::DetAlgorithm::Bareiss)->ArgsProduct({{0, 1, 2}, {4, 8, 16, 32}});
BENCHMARK_CAPTURE(BM_Det, elimination, detsum::DetAlgorithm::Elimination)->ArgsProduct({{2}, {4, 8, 16, 32}});
BENCHMARK(BM_AlternatingSum)->ArgsProduct({{0, 2, 3}, {4, 8, 12}});
BENCHMARK(BM_ProductIdentity)->Args({20, 1})->Args({10, 2})->Args({6, 3})->Args({5, 4});
BENCHMARK(BM_GenericDetIdentity);
BENCHMARK(BM_InvertibleSubsum);
BENCHMARK(BM_Miner);
BENCHMARK_MAIN();
