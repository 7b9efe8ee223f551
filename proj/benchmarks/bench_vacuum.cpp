#include <benchmark/benchmark.h>

#include "stochkg/vacuum/field.hpp"

using namespace stochkg;

static void BM_SampleModes(benchmark::State& state) {
  const double cutoff = static_cast<double>(state.range(0));
  for (auto _ : state) {
    SeededRng rng(1, 0);
    benchmark::DoNotOptimize(vacuum::sample_modes(0.5, cutoff, rng));
  }
}
BENCHMARK(BM_SampleModes)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_FieldTensor(benchmark::State& state) {
  SeededRng rng(1, 0);
  const auto modes = vacuum::sample_modes(0.5, static_cast<double>(state.range(0)), rng);
  FourVector x(0.3, 0.1, -0.2, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vacuum::field_tensor(modes, x));
    x[0] += 1e-3;
  }
  state.counters["modes"] = static_cast<double>(modes.size());
}
BENCHMARK(BM_FieldTensor)->Arg(2)->Arg(4)->Arg(8);
