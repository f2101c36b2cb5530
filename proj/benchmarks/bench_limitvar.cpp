#include <benchmark/benchmark.h>

#include <cmath>

#include "ssgauss/hermite.hpp"
#include "ssgauss/limitvar.hpp"

using namespace ssgauss;

static void BM_SigmaQSq(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(sigma_q_sq(alpha, 2));
}
BENCHMARK(BM_SigmaQSq)->Arg(40)->Arg(100)->Arg(140);

static void BM_Expand(benchmark::State& state) {
  const int q_max = static_cast<int>(state.range(0));
  const double mean = normal_abs_moment(3);
  const auto f = [mean](double x) { return std::abs(x) * x * x - mean; };
  for (auto _ : state) benchmark::DoNotOptimize(expand(f, q_max));
}
BENCHMARK(BM_Expand)->Arg(10)->Arg(20)->Arg(40);
