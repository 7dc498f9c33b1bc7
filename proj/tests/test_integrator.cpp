#include <cmath>

#include "doctest.h"
#include "slung/chain_dynamics.hpp"
#include "slung/errors.hpp"
#include "slung/integrator.hpp"
#include "slung/scenario.hpp"

using namespace slung;

namespace {

PlantParams single_link_plant() {
  PlantParams p = default_scenario().plant;
  p.link_mass = {0.1};
  p.link_length = {0.1};
  return p;
}

ControlSample hover(const InertiaTable& t, double g) {
  ControlSample u;
  u.u.f = t.M00 * g;
  return u;
}

double state_distance(const SystemState& a, const SystemState& b) {
  double d = (a.x - b.x).norm() + (a.v - b.v).norm() + (a.R - b.R).norm() +
             (a.Omega - b.Omega).norm();
  for (int i = 0; i < a.n(); ++i) {
    d += (a.q[i] - b.q[i]).norm() + (a.omega[i] - b.omega[i]).norm();
  }
  return d;
}

}  // namespace

TEST_CASE("equilibrium state with equilibrium control is a fixed point") {
  const PlantParams p = default_scenario().plant;
  const InertiaTable t = build_inertia_table(p);
  const SystemState s0 = hanging_state(p, Vec3(0.1, -0.2, 0.3));
  IntegratorConfig cfg;
  SystemState s = s0;
  for (int k = 0; k < 10; ++k) s = step(p, t, s, hover(t, p.g), cfg, k);
  CHECK(state_distance(s, s0) < 1e-12);
}

TEST_CASE("free fall of the hanging chain is ballistic over one step") {
  const PlantParams p = default_scenario().plant;
  const InertiaTable t = build_inertia_table(p);
  IntegratorConfig cfg;
  const SystemState s1 = step(p, t, hanging_state(p), ControlSample{}, cfg);
  CHECK((s1.v - p.g * cfg.dt * kE3).norm() < 1e-12);
  CHECK((s1.x - 0.5 * p.g * cfg.dt * cfg.dt * kE3).norm() < 1e-12);
}

TEST_CASE("RK4 order: halving dt cuts the swing trajectory error ~16x") {
  const PlantParams p = single_link_plant();
  const InertiaTable t = build_inertia_table(p);
  // constant thrust balancing the total weight gives a genuine pendulum
  // swing (free fall would be swing-free)
  ControlSample held;
  held.use_force = true;
  held.force = -t.M00 * p.g * kE3;

  SystemState s0 = hanging_state(p);
  s0.q[0] = exp_so3(1.0 * kE2) * kE3;

  const double T = 0.64;
  auto propagate = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    SystemState s = s0;
    const long steps = std::lround(T / dt);
    for (long k = 0; k < steps; ++k) s = step(p, t, s, held, cfg, k);
    return s;
  };
  const SystemState ref = propagate(1e-5);
  const double e1 = state_distance(propagate(4e-3), ref);
  const double e2 = state_distance(propagate(2e-3), ref);
  const double e3_ = state_distance(propagate(1e-3), ref);
  CHECK(e1 / e2 > 10.0);
  CHECK(e1 / e2 < 25.0);
  CHECK(e2 / e3_ > 10.0);
  CHECK(e2 / e3_ < 25.0);
}

TEST_CASE("Euler-projected converges at first order") {
  const PlantParams p = single_link_plant();
  const InertiaTable t = build_inertia_table(p);
  ControlSample held;
  held.use_force = true;
  held.force = -t.M00 * p.g * kE3;
  SystemState s0 = hanging_state(p);
  s0.q[0] = exp_so3(0.5 * kE2) * kE3;

  const double T = 0.2;
  auto propagate = [&](double dt, Scheme scheme) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.scheme = scheme;
    SystemState s = s0;
    const long steps = std::lround(T / dt);
    for (long k = 0; k < steps; ++k) s = step(p, t, s, held, cfg, k);
    return s;
  };
  const SystemState ref = propagate(1e-5, Scheme::kRK4Projected);
  const double e1 = state_distance(propagate(2e-3, Scheme::kEulerProjected), ref);
  const double e2 = state_distance(propagate(1e-3, Scheme::kEulerProjected), ref);
  CHECK(e1 / e2 > 1.6);
  CHECK(e1 / e2 < 2.6);
}

TEST_CASE("manifold invariants hold after every step") {
  const PlantParams p = default_scenario().plant;
  const InertiaTable t = build_inertia_table(p);
  IntegratorConfig cfg;
  SystemState s = hanging_state(p);
  s.q = horizontal_arc(p.n(), 1.0);
  s.Omega = Vec3(3.0, -2.0, 1.0);   // tumbling quadrotor
  ControlSample u;
  u.u.f = 2.0;
  u.u.M = Vec3(0.005, -0.003, 0.002);
  for (int k = 0; k < 2000; ++k) {
    s = step(p, t, s, u, cfg, k);
    for (int i = 0; i < s.n(); ++i) {
      CHECK(std::abs(s.q[i].norm() - 1.0) <= 1e-12);
      CHECK(std::abs(s.q[i].dot(s.omega[i])) <= 1e-9);
    }
  }
  CHECK((s.R.transpose() * s.R - Mat3::Identity()).norm() <= 1e-9);
  CHECK(s.R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate bookkeeping") {
  const PlantParams p = default_scenario().plant;
  const InertiaTable t = build_inertia_table(p);
  const auto free_flight = [](const SystemState&, double) { return ControlSample{}; };
  IntegratorConfig cfg;
  SystemState s0 = hanging_state(p);

  SUBCASE("duration zero yields the initial sample only") {
    const TrajectoryLog log = simulate(p, t, s0, free_flight, cfg, 0.0, 10);
    CHECK(log.samples.size() == 1);
    CHECK(log.samples[0].t == 0.0);
  }
  SUBCASE("log length follows floor(duration / (dt * decimation)) + 1") {
    const TrajectoryLog log = simulate(p, t, s0, free_flight, cfg, 0.1, 10);
    CHECK(log.samples.size() == 11);
    CHECK(log.samples.back().t == doctest::Approx(0.1));
    const TrajectoryLog log2 = simulate(p, t, s0, free_flight, cfg, 0.025, 10);
    CHECK(log2.samples.size() == 3);
  }
  SUBCASE("non-finite states abort with the step index") {
    SystemState tilted = s0;
    tilted.q = horizontal_arc(p.n(), 1.0);
    // thrust this large overflows the link rates within two steps
    const auto insane = [](const SystemState&, double) {
      ControlSample u;
      u.u.f = 1e200;
      return u;
    };
    CHECK_THROWS_WITH_AS(simulate(p, t, tilted, insane, cfg, 1.0, 1),
                         doctest::Contains("step"), NonFiniteError);
  }
  SUBCASE("a diverging stiff run surfaces the singular mass-matrix guard") {
    IntegratorConfig coarse;
    coarse.dt = 10.0;
    SystemState tilted = s0;
    tilted.q = horizontal_arc(p.n(), 1.0);
    const auto held = [&](const SystemState&, double) {
      ControlSample u;
      u.use_force = true;
      u.force = -t.M00 * p.g * kE3;
      return u;
    };
    CHECK_THROWS_AS(simulate(p, t, tilted, held, coarse, 1000.0, 1),
                    SingularMassMatrixError);
  }
}
