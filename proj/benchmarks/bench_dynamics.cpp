#include <benchmark/benchmark.h>

#include "stochkg/dynamics/ensemble.hpp"

using namespace stochkg;
using namespace stochkg::dynamics;

static void BM_CharacteristicStep(benchmark::State& state) {
  SeededRng rng(2, 0);
  const VacuumFieldSource field(vacuum::sample_modes(1.0, static_cast<double>(state.range(0)), rng));
  CharacteristicStepper stepper(field, {}, OnShellMomentum({0.3, 0.0, 0.0}, 1.0), 0.3, 0.0, 1e-3);
  for (auto _ : state) stepper.step();
  benchmark::DoNotOptimize(stepper.position());
}
BENCHMARK(BM_CharacteristicStep)->Arg(2)->Arg(3)->Arg(4);

static void BM_FreeStreamingEnsemble(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.trajectories = static_cast<std::size_t>(state.range(0));
  cfg.cloud = {{}, {0.5, 0.5, 0.5}, {0.5, 0.0, 0.0}, {0.4, 0.0, 0.0}};
  cfg.dt = 0.05;
  cfg.axes = {{PhaseAxis::x1, -2.0, 6.0, 16}, {PhaseAxis::p1, -0.8, 1.8, 13}};
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(cfg, {0.0, 5.0}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FreeStreamingEnsemble)->Arg(1000)->Arg(10000)->UseRealTime()->Unit(benchmark::kMillisecond);
