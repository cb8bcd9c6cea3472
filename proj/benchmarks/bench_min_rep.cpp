#include <benchmark/benchmark.h>

#include "binrep/min_rep.hpp"

using namespace binrep;

static void BM_min_rep_table(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const auto end = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(min_rep_table(k, end));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(end));
}
BENCHMARK(BM_min_rep_table)->Args({2, 1000000})->Args({3, 1000000})->Args({3, 10000000})->Unit(benchmark::kMillisecond);

static void BM_rep_searcher(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? SearchMode::RepeatsAllowed : SearchMode::DistinctOnly;
  const RepSearcher searcher(3, WideInt(10000000u));
  std::uint64_t n = 5000000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(searcher.min_rep(WideInt(n), 8, mode));
    n = n == 5001000 ? 5000000 : n + 1;
  }
}
BENCHMARK(BM_rep_searcher)->Arg(0)->Arg(1);
