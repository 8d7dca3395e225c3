#include <benchmark/benchmark.h>

#include "pointnls/cn_solver.hpp"
#include "pointnls/exact.hpp"
#include "pointnls/free_propagator.hpp"
#include "pointnls/fresnel.hpp"
#include "pointnls/proximity.hpp"
#include "pointnls/volterra.hpp"

using namespace pointnls;

static const PhysicsParams kCubic(3.0);

static void BM_CnStep(benchmark::State& state) {
  const GridSpec g(20.0, static_cast<std::size_t>(state.range(0)));
  WaveState u = sample_exact(Gaussian{1.2, 1.0, 0.0}, kCubic, g, 0.0);
  const CNConfig cfg;
  for (auto _ : state) {
    StepOutcome out = cn_step(u, kCubic, cfg, 1e-3);
    benchmark::DoNotOptimize(out.state[g.center()]);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CnStep)->Arg(2001)->Arg(8001)->Arg(32001);

static void BM_Evolve(benchmark::State& state) {
  const GridSpec g(20.0, static_cast<std::size_t>(state.range(0)));
  const WaveState u = sample_exact(SolitaryWave{}, kCubic, g, 0.0);
  TraceOptions opts;
  opts.diagnostic_interval = 1e-2;
  for (auto _ : state) {
    EvolveResult r = evolve(u, kCubic, CNConfig{}, 0.1, opts);
    benchmark::DoNotOptimize(r.final_state[g.center()]);
  }
}
BENCHMARK(BM_Evolve)->Arg(2001)->Unit(benchmark::kMillisecond);

static void BM_FreePropagatorAtOrigin(benchmark::State& state) {
  const GridSpec g(20.0, 2001);
  const WaveState u = sample_exact(Gaussian{1.0, 1.0, 0.0}, kCubic, g, 0.0);
  const auto rule = static_cast<FreeQuadrature>(state.range(0));
  const FreePropagator prop(u, rule);
  for (auto _ : state) benchmark::DoNotOptimize(prop.at(0.0, 0.3));
}
BENCHMARK(BM_FreePropagatorAtOrigin)
    ->Arg(static_cast<int>(FreeQuadrature::Trapezoid))
    ->Arg(static_cast<int>(FreeQuadrature::ProductLinear))
    ->Arg(static_cast<int>(FreeQuadrature::ProductCubic));

static void BM_Fresnel(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fresnel_cs(x));
    x = x > 8.0 ? 0.0 : x + 0.013;
  }
}
BENCHMARK(BM_Fresnel);

static void BM_BoundaryTrace(benchmark::State& state) {
  const GridSpec g(20.0, 2001);
  const WaveState u = sample_exact(SolitaryWave{}, kCubic, g, 0.0);
  VolterraConfig cfg;
  for (auto _ : state) {
    BoundaryTrace tr = solve_boundary_trace(u, kCubic, cfg, static_cast<double>(state.range(0)) * 1e-3);
    benchmark::DoNotOptimize(tr.values.back());
  }
}
BENCHMARK(BM_BoundaryTrace)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_GroundStateProximity(benchmark::State& state) {
  const GridSpec g(20.0, 2001);
  const WaveState u = sample_exact(GroundStateModulation{1.3, 1.7, 0.2, 0.0}, kCubic, g, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(ground_state_proximity(u).distance);
}
BENCHMARK(BM_GroundStateProximity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
