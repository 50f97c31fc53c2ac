#include <benchmark/benchmark.h>

#include "levywalk/limit.hpp"

using namespace levywalk;

static void BM_stable_list(benchmark::State& state) {
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  const LevyDescriptor nu = StableMeasure{HeavyTailLaw(0.5)};
  const auto lambda = DirectionMeasure::symmetric_axis(1);
  std::uint64_t j = 0;
  for (auto _ : state) {
    RngStream rng(3, stream_id(Stage::limit, j++));
    benchmark::DoNotOptimize(simulate_coupled_jumps(nu, lambda, eps, 1.0, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_stable_list)->Arg(2)->Arg(3)->Arg(4);

static void BM_distributed_list(benchmark::State& state) {
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  const LevyDescriptor nu = DistributedMeasure{MixingDensity(1.0, 2.0)};
  const auto lambda = DirectionMeasure::symmetric_axis(1);
  std::uint64_t j = 0;
  for (auto _ : state) {
    RngStream rng(3, stream_id(Stage::limit, j++));
    benchmark::DoNotOptimize(simulate_coupled_jumps(nu, lambda, eps, 1.0, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_distributed_list)->Arg(2)->Arg(3)->Arg(4);

static void BM_limit_position(benchmark::State& state) {
  RngStream rng(4, 4);
  const auto list = simulate_coupled_jumps_covering(StableMeasure{HeavyTailLaw(0.5)},
                                                    DirectionMeasure::point(1), 1e-3, 10.0, rng);
  double t = 0.0;
  for (auto _ : state) {
    t = t >= 10.0 ? 0.0 : t + 0.001;
    benchmark::DoNotOptimize(limit_position(list, t, Scenario::wait_first));
  }
}
BENCHMARK(BM_limit_position);

static void BM_tail_mass_distributed(benchmark::State& state) {
  const LevyDescriptor nu = DistributedMeasure{MixingDensity(0.5, 2.0)};
  for (auto _ : state) benchmark::DoNotOptimize(tail_mass(nu, 1e-3));
}
BENCHMARK(BM_tail_mass_distributed);
