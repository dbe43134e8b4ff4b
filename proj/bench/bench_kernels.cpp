#include <benchmark/benchmark.h>
#include <cmath>
#include "jetflow/parallel.hpp"

// serial reference vs OpenMP kernels on the reduction and multiplier shapes
// the field operators are built from

static void BM_det_sum_serial(benchmark::State& state) {
  const std::size_t n = state.range(0);
  for (auto _ : state) {
    const double s = jetflow::ref::det_sum(n, [](std::size_t i) { return std::sin(1e-3 * i); });
    benchmark::DoNotOptimize(s);
  }
}
static void BM_det_sum_parallel(benchmark::State& state) {
  const std::size_t n = state.range(0);
  jetflow::set_workers(0);
  for (auto _ : state) {
    const double s = jetflow::det_sum(n, [](std::size_t i) { return std::sin(1e-3 * i); });
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_det_sum_serial)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 23);
BENCHMARK(BM_det_sum_parallel)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 23);

BENCHMARK_MAIN();
