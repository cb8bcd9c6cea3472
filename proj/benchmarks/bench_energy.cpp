#include <benchmark/benchmark.h>

#include "binrep/energy.hpp"

using namespace binrep;

static void BM_multiplicity_map(benchmark::State& state) {
  const auto path = state.range(0) == 0 ? TallyPath::Direct : TallyPath::MeetInTheMiddle;
  const auto h = static_cast<unsigned>(state.range(1));
  const auto m = static_cast<Index>(state.range(2));
  const TallyOptions options{.threads = 1, .path = path};
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity_map(Sequence::binomial(2), h, m, options));
}
BENCHMARK(BM_multiplicity_map)
    ->Args({0, 3, 100})
    ->Args({1, 3, 100})
    ->Args({1, 4, 100})
    ->Args({1, 4, 150})
    ->Unit(benchmark::kMillisecond);

static void BM_sumset_bitset(benchmark::State& state) {
  const auto values = Sequence::binomial(2).values_up_to_index(static_cast<Index>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sumset_size_bitset(values, 3));
}
BENCHMARK(BM_sumset_bitset)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);
