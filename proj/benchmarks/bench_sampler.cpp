#include <benchmark/benchmark.h>

#include "ssgauss/sampler.hpp"

using namespace ssgauss;

static void BM_Cholesky(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto ic = increment_cov(ModelSpec::fbm(0.7), N, N);
  for (auto _ : state) benchmark::DoNotOptimize(cholesky(ic));
}
BENCHMARK(BM_Cholesky)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SampleBatch(benchmark::State& state) {
  const auto ic = increment_cov(ModelSpec::fbm(0.7), 512, 512);
  const auto factor = cholesky(ic);
  const int M = 1000;
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_batch(ic, factor, M, 7, threads));
  state.SetItemsProcessed(state.iterations() * M);
}
BENCHMARK(BM_SampleBatch)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);
