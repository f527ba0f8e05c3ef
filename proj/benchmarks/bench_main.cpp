#include <benchmark/benchmark.h>

#include "kabelian/complexity.hpp"
#include "kabelian/equivalence.hpp"
#include "kabelian/flowgraph.hpp"
#include "kabelian/generators.hpp"
#include "kabelian/repetitions.hpp"

using namespace kabelian;

static void BM_signature(benchmark::State& state) {
  const Word prefix = WordStream::fibonacci().prefix(static_cast<std::size_t>(state.range(0)));
  const KOrder k(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(signature(prefix, k));
  }
}
BENCHMARK(BM_signature)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_equivalence_decision(benchmark::State& state) {
  const Word u = WordStream::fibonacci().prefix(static_cast<std::size_t>(state.range(0)));
  const Word v = WordStream::mechanical(8, 21, 8).prefix(static_cast<std::size_t>(state.range(0)));
  const KOrder k(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_abelian_equivalent(u, v, k));
  }
}
BENCHMARK(BM_equivalence_decision)->Arg(256)->Arg(1024);

static void BM_census_flow(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_classes_flow(2, 2, n));
  }
}
BENCHMARK(BM_census_flow)->Arg(20)->Arg(40)->Arg(60);

static void BM_census_flow_k3(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_classes_flow(2, 3, n));
  }
}
BENCHMARK(BM_census_flow_k3)->Arg(12)->Arg(16);

static void BM_k_complexity(benchmark::State& state) {
  const Word prefix = WordStream::fibonacci().prefix(2000);
  const KOrder k(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_complexity(prefix, k, n));
  }
}
BENCHMARK(BM_k_complexity)->Arg(10)->Arg(40);

static void BM_balance_bound(benchmark::State& state) {
  const Word prefix = WordStream::fibonacci().prefix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(balance_bound(prefix, 3));
  }
}
BENCHMARK(BM_balance_bound)->Arg(500)->Arg(1000)->Arg(2000);

static void BM_find_power(benchmark::State& state) {
  const Word prefix = WordStream::fibonacci().prefix(1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_power(prefix, KOrder(2), 3, PositionSet::all(), 50));
  }
}
BENCHMARK(BM_find_power);

static void BM_mechanical_prefix(benchmark::State& state) {
  const auto stream = WordStream::mechanical(8, 21, 8);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.prefix(n));
  }
}
BENCHMARK(BM_mechanical_prefix)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
