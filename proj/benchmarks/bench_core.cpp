#include <benchmark/benchmark.h>

#include "qlimit/grid.hpp"
#include "qlimit/numerics.hpp"
#include "qlimit/observables.hpp"
#include "qlimit/open_system.hpp"

namespace {

qlimit::DiffusiveConfig config(int b) {
  qlimit::DiffusiveConfig c;
  c.b = b;
  c.kappa = 1.0;
  c.omega = 0.1;
  c.lambda = 1.0;
  return c;
}

void BM_Kernel(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(qlimit::kernel(5, t, 1.0, 1.0));
}
BENCHMARK(BM_Kernel)->Arg(1)->Arg(10)->Arg(1000);

void BM_FockWeight(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qlimit::fock_weight(cfg, 40, 1.0));
}
BENCHMARK(BM_FockWeight)->Arg(1)->Arg(15)->Arg(100);

void BM_Distribution(benchmark::State& state) {
  const auto cfg = config(15);
  const double kt = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qlimit::distribution(cfg, kt));
}
BENCHMARK(BM_Distribution)->Arg(1)->Arg(10)->Arg(100);

void BM_MeanYSeries(benchmark::State& state) {
  const auto cfg = config(15);
  const auto grid = qlimit::LogGrid{}.values();
  for (auto _ : state) benchmark::DoNotOptimize(qlimit::mean_y_series(cfg, grid));
}
BENCHMARK(BM_MeanYSeries)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
