// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "permclass/oracle.hpp"
#include "permclass/sampler.hpp"

using namespace permclass;

namespace {

const PatternBasis& p1_basis() {
  static const PatternBasis b = PatternBasis::parse("4123,1324");
  return b;
}

void BM_count_table_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_table_serial(p1_basis(), {}, n));
}

void BM_count_table(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_table(p1_basis(), {}, n, threads));
}

void BM_sample_batch_serial(benchmark::State& state) {
  SlotDP dp(SamplerClass::flag, 200);
  for (auto _ : state) benchmark::DoNotOptimize(sample_batch_serial(dp, 200, 64, 1));
}

void BM_sample_batch(benchmark::State& state) {
  SlotDP dp(SamplerClass::flag, 200);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_batch(dp, 200, 64, 1, threads));
}

}  // namespace

BENCHMARK(BM_count_table_serial)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_table)->Args({9, 1})->Args({10, 1})->Args({10, 2})->Args({10, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_batch_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_batch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
