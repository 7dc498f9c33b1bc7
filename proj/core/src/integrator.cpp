#include "slung/integrator.hpp"

#include <cmath>

#include "slung/diagnostics.hpp"
#include "slung/errors.hpp"

namespace slung {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("integrator: dt must be > 0");
  if (renormalize_every < 1) throw ValidationError("integrator: renormalize_every must be >= 1");
}

namespace {

struct Derivative {
  Vec3 xdot, vdot;
  Vec3 body_rate;  // Omega at the evaluation point; drives the R update
  Vec3 Omegadot;
  std::vector<Vec3> qdot, wdot;
};

Derivative eval(const PlantParams& p, const InertiaTable& t, const SystemState& s,
                const ControlSample& u) {
  const Accelerations acc = u.use_force
                                ? accelerations_force(p, t, s, u.force, u.u.M)
                                : accelerations(p, t, s, u.u);
  Derivative d;
  d.xdot = s.v;
  d.vdot = acc.xddot;
  d.body_rate = s.Omega;
  d.Omegadot = acc.Omegadot;
  d.qdot.resize(s.n());
  d.wdot = acc.omegadot;
  for (int i = 0; i < s.n(); ++i) d.qdot[i] = s.qdot(i);
  return d;
}

SystemState advance(const SystemState& s, double h, const Derivative& k) {
  SystemState r = s;
  r.x += h * k.xdot;
  r.v += h * k.vdot;
  r.R = s.R * exp_so3(h * k.body_rate);
  r.Omega += h * k.Omegadot;
  for (int i = 0; i < s.n(); ++i) {
    r.q[i] += h * k.qdot[i];
    r.omega[i] += h * k.wdot[i];
  }
  return r;
}

SystemState rk4_step(const PlantParams& p, const InertiaTable& t, const SystemState& s,
                     const ControlSample& u, double dt) {
  const Derivative k1 = eval(p, t, s, u);
  const Derivative k2 = eval(p, t, advance(s, dt / 2, k1), u);
  const Derivative k3 = eval(p, t, advance(s, dt / 2, k2), u);
  const Derivative k4 = eval(p, t, advance(s, dt, k3), u);
  SystemState r = s;
  auto mix = [&](auto&& get) -> Vec3 {
    return (get(k1) + 2.0 * get(k2) + 2.0 * get(k3) + get(k4)) / 6.0;
  };
  r.x += dt * mix([](const Derivative& k) { return k.xdot; });
  r.v += dt * mix([](const Derivative& k) { return k.vdot; });
  r.Omega += dt * mix([](const Derivative& k) { return k.Omegadot; });
  const Vec3 rate_eff = mix([](const Derivative& k) { return k.body_rate; });
  r.R = s.R * exp_so3(dt * rate_eff);
  for (int i = 0; i < s.n(); ++i) {
    r.q[i] += dt * (k1.qdot[i] + 2.0 * k2.qdot[i] + 2.0 * k3.qdot[i] + k4.qdot[i]) / 6.0;
    r.omega[i] += dt * (k1.wdot[i] + 2.0 * k2.wdot[i] + 2.0 * k3.wdot[i] + k4.wdot[i]) / 6.0;
  }
  return r;
}

}  // namespace

SystemState step(const PlantParams& p, const InertiaTable& t, const SystemState& s,
                 const ControlSample& u, const IntegratorConfig& cfg, long step_index) {
  cfg.validate();
  SystemState r = cfg.scheme == Scheme::kRK4Projected
                      ? rk4_step(p, t, s, u, cfg.dt)
                      : advance(s, cfg.dt, eval(p, t, s, u));
  if ((step_index + 1) % cfg.renormalize_every == 0) {
    r.restore_constraints();
  }
  if (!r.all_finite()) {
    throw NonFiniteError("integrator: non-finite state after step " +
                         std::to_string(step_index));
  }
  return r;
}

SystemState step(const PlantParams& p, const InertiaTable& t, const SystemState& s,
                 const std::function<ControlInput(const SystemState&)>& control,
                 const IntegratorConfig& cfg) {
  ControlSample u;
  u.u = control(s);
  return step(p, t, s, u, cfg);
}

TrajectoryLog simulate(const PlantParams& p, const InertiaTable& t, const SystemState& s0,
                       const ControlFn& control, const IntegratorConfig& cfg,
                       double duration, int decimation) {
  cfg.validate();
  if (duration < 0.0) throw ValidationError("simulate: duration must be >= 0");
  if (decimation < 1) throw ValidationError("simulate: decimation must be >= 1");
  const long steps = static_cast<long>(std::floor(duration / cfg.dt + 1e-9));

  TrajectoryLog log;
  log.n_links = s0.n();
  log.sample_dt = cfg.dt * decimation;
  log.samples.reserve(static_cast<std::size_t>(steps / decimation) + 1);

  SystemState s = s0;
  auto record = [&](long k, const ControlSample& u) {
    TrajectorySample sample;
    sample.t = k * cfg.dt;
    sample.state = s;
    sample.u = u.use_force ? ControlInput{} : u.u;
    sample.Omega_c = u.Omega_c;
    sample.energy = total_energy(p, t, s);
    sample.momentum = generalized_momentum(t, s);
    const auto [eq, ew] = link_error_metrics(s);
    sample.e_q = eq;
    sample.e_omega = ew;
    sample.psi_R = u.psi_R;
    log.samples.push_back(std::move(sample));
  };

  for (long k = 0; k < steps; ++k) {
    const ControlSample u = control(s, k * cfg.dt);
    if (k % decimation == 0) record(k, u);
    try {
      s = step(p, t, s, u, cfg, k);
    } catch (const NonFiniteError&) {
      throw NonFiniteError("simulate: non-finite state at step " + std::to_string(k) +
                           " (t = " + std::to_string(k * cfg.dt) + " s)");
    }
  }
  // Keep the sample spacing constant: the state after the last step is
  // logged only when it falls on the decimation grid.
  if (steps % decimation == 0) record(steps, control(s, steps * cfg.dt));
  return log;
}

}  // namespace slung
