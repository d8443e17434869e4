#include <benchmark/benchmark.h>

#include "udn/analytic.hpp"
#include "udn/geometry.hpp"
#include "udn/simulator.hpp"

namespace {

using namespace udn;

const AnalyticParams& reference() {
  static const AnalyticParams p = AnalyticParams::from_config(NetworkConfig{});
  return p;
}

void BM_LaplaceSignal(benchmark::State& state) {
  double t = 1e4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace_signal(t, reference(), QuadratureSpec{}));
    t = t < 1e10 ? t * 1.7 : 1e4;
  }
}
BENCHMARK(BM_LaplaceSignal);

void BM_BuildWeightTable(benchmark::State& state) {
  for (auto _ : state) {
    auto table = build_weight_table(reference(), QuadratureSpec{},
                                    static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(table(100.0));
  }
}
BENCHMARK(BM_BuildWeightTable)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_LaplaceInterference(benchmark::State& state) {
  const auto table = build_weight_table(reference(), QuadratureSpec{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace_interference(1e11, reference(), QuadratureSpec{}, table));
  }
}
BENCHMARK(BM_LaplaceInterference)->Unit(benchmark::kMillisecond);

void BM_TauAnalytic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tau_analytic(reference(), QuadratureSpec{}));
}
BENCHMARK(BM_TauAnalytic)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_RunDrop(benchmark::State& state) {
  const NetworkConfig cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    RandomStream rng = RandomStream(1).split(i++);
    benchmark::DoNotOptimize(run_drop(cfg, Scheme::Mrt, rng, 20));
  }
}
BENCHMARK(BM_RunDrop)->Unit(benchmark::kMillisecond);

void BM_MaternThinning(benchmark::State& state) {
  RandomStream rng(2);
  const PointSet candidates = sample_ppp(20e-6, Window(10'000.0, 10'000.0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matern_hardcore_thinning(candidates, 400.0, rng));
  }
}
BENCHMARK(BM_MaternThinning)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
