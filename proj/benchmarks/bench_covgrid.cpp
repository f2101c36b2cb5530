#include <benchmark/benchmark.h>

#include "ssgauss/analysis.hpp"
#include "ssgauss/covgrid.hpp"

using namespace ssgauss;

static void BM_IncrementCov(benchmark::State& state) {
  const auto model = ModelSpec::swanson();
  const int N = static_cast<int>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(increment_cov(model, N, N, threads));
}
BENCHMARK(BM_IncrementCov)
    ->ArgsProduct({{256, 1024, 4096}, {1, 8}})
    ->Unit(benchmark::kMillisecond);

static void BM_ContractionNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ic = increment_cov(ModelSpec::fbm(0.3), n, n);
  for (auto _ : state) benchmark::DoNotOptimize(contraction_norm(ic, 2, 1, 1.0, 1.0));
}
BENCHMARK(BM_ContractionNorm)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
