#include <benchmark/benchmark.h>

#include "slung/chain_dynamics.hpp"
#include "slung/controller.hpp"
#include "slung/integrator.hpp"
#include "slung/scenario.hpp"

using namespace slung;

namespace {

PlantParams plant_with_links(int n) {
  PlantParams p = default_scenario().plant;
  p.link_mass.assign(n, 0.1);
  p.link_length.assign(n, 0.1);
  return p;
}

SystemState swinging_state(const PlantParams& p) {
  SystemState s;
  s.q = horizontal_arc(p.n(), 1.0);
  s.omega.resize(p.n());
  for (int i = 0; i < p.n(); ++i) {
    s.omega[i] = project_tangent(s.q[i], Vec3(0.3, 0.7 + 0.1 * i, 0.0));
  }
  return s;
}

void BM_Accelerations(benchmark::State& state) {
  const PlantParams p = plant_with_links(static_cast<int>(state.range(0)));
  const InertiaTable t = build_inertia_table(p);
  const SystemState s = swinging_state(p);
  const ControlInput u{p.m * p.g, Vec3(0.01, -0.02, 0.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(accelerations(p, t, s, u));
  }
}
BENCHMARK(BM_Accelerations)->Arg(1)->Arg(5)->Arg(10)->Arg(20);

void BM_Rk4Step(benchmark::State& state) {
  const PlantParams p = plant_with_links(static_cast<int>(state.range(0)));
  const InertiaTable t = build_inertia_table(p);
  SystemState s = swinging_state(p);
  ControlSample held;
  held.use_force = true;
  held.force = -t.M00 * p.g * kE3;
  IntegratorConfig cfg;
  long k = 0;
  for (auto _ : state) {
    s = step(p, t, s, held, cfg, k++);
  }
  benchmark::DoNotOptimize(s);
}
BENCHMARK(BM_Rk4Step)->Arg(1)->Arg(5)->Arg(20);

void BM_ControllerEvaluation(benchmark::State& state) {
  const ScenarioConfig cfg = default_scenario();
  const InertiaTable t = build_inertia_table(cfg.plant);
  GeometricController ctl(cfg.plant, t, cfg.controller);
  const SystemState s = cfg.initial_state();
  double time = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctl(s, time));
    time += 1e-3;
  }
}
BENCHMARK(BM_ControllerEvaluation);

void BM_ClosedLoopSecond(benchmark::State& state) {
  const ScenarioConfig cfg = default_scenario();
  const InertiaTable t = build_inertia_table(cfg.plant);
  const SystemState s0 = cfg.initial_state();
  for (auto _ : state) {
    GeometricController ctl(cfg.plant, t, cfg.controller);
    benchmark::DoNotOptimize(
        simulate(cfg.plant, t, s0, ControlFn(ctl), cfg.integrator, 1.0, 1000));
  }
}
BENCHMARK(BM_ClosedLoopSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
