#include <benchmark/benchmark.h>

#include "stochkg/lumps/transport.hpp"

using namespace stochkg;
using namespace stochkg::lumps;

static void BM_LumpEvaluate(benchmark::State& state) {
  const LumpSolution l{{}, OnShellMomentum::from_velocity({0.5, 0.0, 0.0}, 1.0)};
  FourVector x(0.1, 1.0, 0.5, -0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lump_evaluate(l, x));
    x[0] += 1e-6;
  }
}
BENCHMARK(BM_LumpEvaluate);

static void BM_LumpTransportResidual(benchmark::State& state) {
  const LumpSolution l{{}, OnShellMomentum::from_velocity({0.5, 0.0, 0.0}, 1.0)};
  const TransportGrid grid{0.0, {}, 6.0, static_cast<std::size_t>(state.range(0)), 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(lump_transport_residual(l, grid));
}
BENCHMARK(BM_LumpTransportResidual)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
