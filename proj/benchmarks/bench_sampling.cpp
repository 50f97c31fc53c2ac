#include <benchmark/benchmark.h>

#include "levywalk/rng.hpp"
#include "levywalk/sampling.hpp"

using namespace levywalk;

static void BM_philox_words(benchmark::State& state) {
  RngStream rng(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rng());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_philox_words);

static void BM_pareto_wait(benchmark::State& state) {
  RngStream rng(1, 2);
  const HeavyTailLaw law(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sample_pareto_waiting(law, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_pareto_wait);

static void BM_mixed_wait(benchmark::State& state) {
  RngStream rng(1, 3);
  const MixingDensity p(0.5, 2.0);
  for (auto _ : state) {
    const double beta = sample_mixing_exponent(p, rng);
    benchmark::DoNotOptimize(sample_conditional_waiting(1000.0, beta, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_mixed_wait);

static void BM_uniform_direction(benchmark::State& state) {
  RngStream rng(1, 4);
  const auto lambda = DirectionMeasure::uniform(static_cast<std::size_t>(state.range(0)));
  std::vector<double> u(lambda.dim());
  for (auto _ : state) {
    sample_direction(lambda, rng, u);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_uniform_direction)->Arg(2)->Arg(3);
