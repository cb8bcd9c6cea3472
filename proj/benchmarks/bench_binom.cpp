#include <benchmark/benchmark.h>

#include "binrep/binom.hpp"

using namespace binrep;

static void BM_binom(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  Index n = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(binom(n, k));
    n = n == 3000 ? 1000 : n + 1;
  }
}
BENCHMARK(BM_binom)->Arg(2)->Arg(3)->Arg(6)->Arg(8);

static void BM_floor_index(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const WideInt x = WideInt::parse("123456789012345678901234567");
  for (auto _ : state) benchmark::DoNotOptimize(floor_index(k, x));
}
BENCHMARK(BM_floor_index)->Arg(2)->Arg(3)->Arg(5)->Arg(8);
