#ifndef SLUNG_INTEGRATOR_HPP
#define SLUNG_INTEGRATOR_HPP

#include <functional>

#include "slung/chain_dynamics.hpp"
#include "slung/trajectory.hpp"

namespace slung {

enum class Scheme { kRK4Projected, kEulerProjected };

struct IntegratorConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::kRK4Projected;
  int renormalize_every = 1;

  void validate() const;
};

/// What the control callback hands back per step. When use_force is set the
/// thrust term -f R e3 is replaced by `force` (simplified / reduced model);
/// otherwise `u` is applied. The extra fields only enrich the trajectory log.
struct ControlSample {
  ControlInput u;
  bool use_force = false;
  Vec3 force = Vec3::Zero();
  Vec3 Omega_c = Vec3::Zero();
  double psi_R = 0.0;
};

using ControlFn = std::function<ControlSample(const SystemState&, double t)>;

/// Advances one step with the input held constant over the step.
/// The attitude is updated multiplicatively, R <- R exp(dt Omega_eff) with
/// the RK4 stage-combined body rate, so det(R) = 1 is preserved exactly;
/// q_i are renormalized and omega_i re-projected per cfg.renormalize_every
/// (step_index is only used for that cadence).
SystemState step(const PlantParams& p, const InertiaTable& t, const SystemState& s,
                 const ControlSample& u, const IntegratorConfig& cfg,
                 long step_index = 0);

/// Spec-shaped convenience overload: evaluates the control once at the step
/// start (zero-order hold) and advances.
SystemState step(const PlantParams& p, const InertiaTable& t, const SystemState& s,
                 const std::function<ControlInput(const SystemState&)>& control,
                 const IntegratorConfig& cfg);

/// Fixed-step loop emitting decimated samples (state, control, energy,
/// momentum, link error metrics). Sample 0 is the initial state; a final
/// sample lands at floor(duration/dt) steps. Throws NonFiniteError with the
/// failing step index if the state leaves the finite range.
TrajectoryLog simulate(const PlantParams& p, const InertiaTable& t, const SystemState& s0,
                       const ControlFn& control, const IntegratorConfig& cfg,
                       double duration, int decimation = 1);

}  // namespace slung

#endif
