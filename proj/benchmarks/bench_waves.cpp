#include <benchmark/benchmark.h>

#include "stochkg/madelung/madelung.hpp"
#include "stochkg/wigner/product_distribution.hpp"

using namespace stochkg;
using namespace stochkg::kgwave;

namespace {

SpectralWave packet(std::size_t points) {
  SpectralWave w(SpaceTimeGrid::line(12.0, points), 1.0);
  w.add_mode({1, 0, 0}, 1.0);
  w.add_mode({2, 0, 0}, Complex(0.15, 0.05));
  w.add_mode({3, 0, 0}, 0.1);
  w.add_mode({-1, 0, 0}, Complex(0.1, -0.05));
  w.add_mode({4, 0, 0}, 0.05);
  return w;
}

}  // namespace

static void BM_Synthesize1D(benchmark::State& state) {
  const auto w = packet(static_cast<std::size_t>(state.range(0)));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(w, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_Synthesize1D)->RangeMultiplier(4)->Range(64, 4096);

static void BM_Synthesize3D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SpectralWave w(SpaceTimeGrid::cube(8.0, n), 1.0);
  w.add_mode({1, 0, -1}, 1.0);
  w.add_mode({0, 2, 1}, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(w, 0.5));
}
BENCHMARK(BM_Synthesize3D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_MadelungDecompose(benchmark::State& state) {
  const auto w = packet(static_cast<std::size_t>(state.range(0)));
  const auto levels = madelung::time_levels(w, 0.5, 0.01);
  for (auto _ : state) {
    const auto mf = madelung::decompose(levels, 1.0);
    benchmark::DoNotOptimize(madelung::continuity_residual(mf));
  }
}
BENCHMARK(BM_MadelungDecompose)->Arg(256)->Arg(1024);

static void BM_MixedDerivativeResidual(benchmark::State& state) {
  const wigner::ProductDistribution pd(packet(64));
  const std::vector<double> x1{0.3, 2.1}, z0{0.0, 0.4}, z1{-0.5, 0.7};
  const auto points = wigner::xz_points(0.2, x1, z0, z1);
  for (auto _ : state) benchmark::DoNotOptimize(wigner::mixed_derivative_residual(pd, points, 0.01));
}
BENCHMARK(BM_MixedDerivativeResidual);
