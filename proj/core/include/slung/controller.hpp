#ifndef SLUNG_CONTROLLER_HPP
#define SLUNG_CONTROLLER_HPP

#include <vector>

#include "slung/integrator.hpp"
#include "slung/plant.hpp"

namespace slung {

/// Gains and references of the stabilizing controller. kR_eff and
/// kOmega_eff are the combined attitude gains k_R/eps^2 and k_Omega/eps.
struct ControllerConfig {
  Vec3 x_d = Vec3::Zero();
  Vec3 b1_d = kE1;                 // heading reference, unit
  double k_x = 12.8;
  double k_xdot = 4.22;
  std::vector<double> k_q;         // per link
  std::vector<double> k_omega;     // per link
  double kR_eff = 0.65;
  double kOmega_eff = 0.11;
  double omega_c_dt = 1e-3;        // finite-difference step for Omega_c [s]
  double omega_c_max = 50.0;       // clamp on ||Omega_c|| [rad/s]
  double omegadot_c_max = 500.0;   // clamp on ||Omegadot_c|| [rad/s^2]

  void validate(int n_links) const;
};

struct AttitudeCommand {
  Mat3 R_c = Mat3::Identity();
  Vec3 Omega_c = Vec3::Zero();
  Vec3 Omegadot_c = Vec3::Zero();
};

struct AttitudeErrors {
  Vec3 e_R = Vec3::Zero();
  Vec3 e_Omega = Vec3::Zero();
  double Psi_R = 0.0;
};

/// Fictitious translational control about the hanging equilibrium:
///   du = -k_x (x - x_d) - k_xdot v
///        + sum_i [ k_q_i P (q_i - e3) + k_omega_i P qdot_i ],  P = C C^T.
/// The link terms drive the pivot toward the displaced payload. Do not flip
/// their sign: of the orientations of the per-link feedback, this is the
/// only one the default gain set stabilizes (all others leave the
/// linearized closed loop with eigenvalues in the right half plane).
Vec3 fictitious_delta_u(const SystemState& s, const ControllerConfig& cfg);

/// Ideal total thrust vector A = du - M00 g e3 (equals -f R e3 at tracking).
Vec3 ideal_thrust_A(const SystemState& s, const InertiaTable& t,
                    const ControllerConfig& cfg, double g);

/// Desired attitude from the thrust direction b3c = -A/||A|| and the heading
/// reference: R_c = [-hat(b3c)^2 b1d / |.|, hat(b3c) b1d / |.|, b3c].
/// Throws DegenerateThrustError for ||A|| < 1e-6 and HeadingParallelError
/// when b1d is parallel to b3c.
Mat3 desired_attitude(const Vec3& A, const Vec3& b1_d);

/// Commanded body rate by finite differencing successive R_c samples,
/// Omega_c = vee((Rc_prev^T Rc - Rc^T Rc_prev)/2) / dt, and Omegadot_c by
/// differencing successive Omega_c; both norm-clamped.
AttitudeCommand desired_angular_velocity(const AttitudeCommand& prev, const Mat3& R_c,
                                         double dt, double omega_c_max,
                                         double omegadot_c_max);

/// e_R = 1/2 vee(Rc^T R - R^T Rc), e_Omega = Omega - R^T Rc Omega_c,
/// Psi_R = 1/2 tr(I - Rc^T R).
AttitudeErrors attitude_errors(const SystemState& s, const AttitudeCommand& cmd);

/// Thrust magnitude and moment:
///   f = -A . R e3
///   M = -kR_eff e_R - kOmega_eff e_Omega + Omega x J Omega
///       - J (hat(Omega) R^T Rc Omega_c - R^T Rc Omegadot_c).
ControlInput control_input(const SystemState& s, const Mat3& J,
                           const ControllerConfig& cfg, const AttitudeCommand& cmd,
                           const Vec3& A);

/// Closed-loop controller for simulate(): evaluates the full law and owns
/// the previous-command memory for the Omega_c finite differences. One
/// instance per simulation loop; not meant to be shared across threads.
class GeometricController {
 public:
  GeometricController(const PlantParams& p, const InertiaTable& t, ControllerConfig cfg);

  ControlSample operator()(const SystemState& s, double t);

  const AttitudeCommand& last_command() const { return prev_; }

 private:
  PlantParams plant_;
  InertiaTable table_;
  ControllerConfig cfg_;
  AttitudeCommand prev_;
  bool has_prev_ = false;
};

/// Reduced-system controller (R == R_c idealization): applies the fictitious
/// force A directly through the free-force dynamics path.
class FictitiousForceController {
 public:
  FictitiousForceController(const PlantParams& p, const InertiaTable& t,
                            ControllerConfig cfg);

  ControlSample operator()(const SystemState& s, double t) const;

 private:
  PlantParams plant_;
  InertiaTable table_;
  ControllerConfig cfg_;
};

}  // namespace slung

#endif
