#include <benchmark/benchmark.h>

#include "levywalk/fl_calculus.hpp"
#include "levywalk/stats.hpp"

using namespace levywalk;

static void BM_psi_stable_uniform2(benchmark::State& state) {
  const FLModelSpec m(HeavyTailLaw(0.5), DirectionMeasure::uniform(2));
  const FLPoint pt{{0.7, -0.2}, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(fl_exponent(m, pt));
}
BENCHMARK(BM_psi_stable_uniform2);

static void BM_psi_distributed(benchmark::State& state) {
  const FLModelSpec m(MixingDensity(0.5, 2.0), DirectionMeasure::symmetric_axis(1));
  const FLPoint pt{{1.0}, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(fl_exponent(m, pt));
}
BENCHMARK(BM_psi_distributed);

static void BM_p2_distributed(benchmark::State& state) {
  const FLModelSpec m(MixingDensity(1.0, 2.0), DirectionMeasure::point(1), Scenario::jump_first);
  const FLPoint pt{{1.0}, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(theoretical_p2_fl(m, pt));
}
BENCHMARK(BM_p2_distributed);

static void BM_numerical_laplace(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  std::vector<std::complex<double>> f(M + 1);
  for (std::size_t m = 0; m <= M; ++m) f[m] = std::exp(-50.0 * m / M);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_laplace(f, 50.0, 1.0));
}
BENCHMARK(BM_numerical_laplace)->Arg(4000);
