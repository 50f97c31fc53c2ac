#include <benchmark/benchmark.h>

#include "levywalk/ensemble.hpp"
#include "levywalk/walk.hpp"

using namespace levywalk;

// One path read at t = 1, 10, 100.
static void BM_lw_positions(benchmark::State& state) {
  const double horizon = static_cast<double>(state.range(0));
  const std::vector<double> times{1.0, 10.0, 100.0};
  std::vector<double> t;
  for (double x : times)
    if (x <= horizon) t.push_back(x);
  std::vector<double> out(t.size());
  const auto lambda = DirectionMeasure::symmetric_axis(1);
  std::uint64_t j = 0;
  for (auto _ : state) {
    RngStream rng(7, stream_id(Stage::walk, j++));
    walk_positions_at(WalkKind::lw, HeavyTailLaw(0.5), lambda, t, rng, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_lw_positions)->Arg(1)->Arg(10)->Arg(100);

static void BM_glw_positions(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  const std::vector<double> t{1.0};
  std::vector<double> out(1);
  const auto lambda = DirectionMeasure::point(1);
  const WaitingTimeLaw law = ConditionalWaiting{n, MixingDensity(0.5, 2.0)};
  std::uint64_t j = 0;
  for (auto _ : state) {
    RngStream rng(7, stream_id(Stage::walk, j++));
    walk_positions_at(WalkKind::glw, law, lambda, t, rng, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_glw_positions)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_ensemble_1e4(benchmark::State& state) {
  const WalkModel model{WalkKind::lw, HeavyTailLaw(0.5), DirectionMeasure::uniform(2)};
  std::vector<double> times;
  for (int i = 1; i <= 100; ++i) times.push_back(0.1 * i);
  EnsembleOptions opts;
  opts.paths = 10000;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ensembles(model, times, opts));
}
BENCHMARK(BM_ensemble_1e4)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
