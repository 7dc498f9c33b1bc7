#include "slung/controller.hpp"

#include <cmath>

#include "slung/errors.hpp"

namespace slung {

namespace {

constexpr double kThrustEps = 1e-6;

Vec3 horizontal(const Vec3& v) { return Vec3(v.x(), v.y(), 0.0); }

Vec3 clamp_norm(const Vec3& v, double bound) {
  const double n = v.norm();
  return n > bound ? (v * (bound / n)).eval() : v;
}

}  // namespace

void ControllerConfig::validate(int n_links) const {
  if (static_cast<int>(k_q.size()) != n_links ||
      static_cast<int>(k_omega.size()) != n_links) {
    throw ValidationError("controller: k_q/k_omega must have one gain per link");
  }
  auto positive = [](double v) { return v > 0.0; };
  if (!positive(k_x) || !positive(k_xdot) || !positive(kR_eff) || !positive(kOmega_eff)) {
    throw ValidationError("controller: gains must be > 0");
  }
  for (double k : k_q) {
    if (!positive(k)) throw ValidationError("controller: k_q entries must be > 0");
  }
  for (double k : k_omega) {
    if (!positive(k)) throw ValidationError("controller: k_omega entries must be > 0");
  }
  if (!positive(omega_c_dt) || !positive(omega_c_max) || !positive(omegadot_c_max)) {
    throw ValidationError("controller: omega_c parameters must be > 0");
  }
  if (!is_unit(b1_d, 1e-6)) throw ValidationError("controller: b1_d must be unit");
}

Vec3 fictitious_delta_u(const SystemState& s, const ControllerConfig& cfg) {
  Vec3 du = -cfg.k_x * (s.x - cfg.x_d) - cfg.k_xdot * s.v;
  for (int i = 0; i < s.n(); ++i) {
    du += cfg.k_q[i] * horizontal(s.q[i] - kE3);
    du += cfg.k_omega[i] * horizontal(s.qdot(i));
  }
  return du;
}

Vec3 ideal_thrust_A(const SystemState& s, const InertiaTable& t,
                    const ControllerConfig& cfg, double g) {
  return fictitious_delta_u(s, cfg) - t.M00 * g * kE3;
}

Mat3 desired_attitude(const Vec3& A, const Vec3& b1_d) {
  const double a = A.norm();
  if (a < kThrustEps) {
    throw DegenerateThrustError("desired_attitude: ||A|| = " + std::to_string(a));
  }
  const Vec3 b3c = -A / a;
  const Vec3 cross = b3c.cross(b1_d);
  if (cross.norm() < kThrustEps) {
    throw HeadingParallelError("desired_attitude: b1_d parallel to commanded thrust axis");
  }
  const Vec3 b2c = cross / cross.norm();
  const Vec3 b1c = -(q_squared_hat(b3c) * b1_d).normalized();
  Mat3 Rc;
  Rc.col(0) = b1c;
  Rc.col(1) = b2c;
  Rc.col(2) = b3c;
  return Rc;
}

AttitudeCommand desired_angular_velocity(const AttitudeCommand& prev, const Mat3& R_c,
                                         double dt, double omega_c_max,
                                         double omegadot_c_max) {
  if (!(dt > 0.0)) throw ValidationError("desired_angular_velocity: dt must be > 0");
  AttitudeCommand cmd;
  cmd.R_c = R_c;
  const Mat3 rel = prev.R_c.transpose() * R_c;
  cmd.Omega_c = vee(0.5 * (rel - rel.transpose())) / dt;
  cmd.Omega_c = clamp_norm(cmd.Omega_c, omega_c_max);
  cmd.Omegadot_c = clamp_norm((cmd.Omega_c - prev.Omega_c) / dt, omegadot_c_max);
  return cmd;
}

AttitudeErrors attitude_errors(const SystemState& s, const AttitudeCommand& cmd) {
  AttitudeErrors e;
  const Mat3 rel = cmd.R_c.transpose() * s.R;
  e.e_R = 0.5 * vee(rel - rel.transpose());
  e.e_Omega = s.Omega - rel.transpose() * cmd.Omega_c;
  e.Psi_R = 0.5 * (Mat3::Identity() - rel).trace();
  return e;
}

ControlInput control_input(const SystemState& s, const Mat3& J,
                           const ControllerConfig& cfg, const AttitudeCommand& cmd,
                           const Vec3& A) {
  const AttitudeErrors e = attitude_errors(s, cmd);
  ControlInput u;
  u.f = -A.dot(s.R * kE3);
  const Mat3 RtRc = s.R.transpose() * cmd.R_c;
  u.M = -cfg.kR_eff * e.e_R - cfg.kOmega_eff * e.e_Omega + s.Omega.cross(J * s.Omega) -
        J * (hat(s.Omega) * RtRc * cmd.Omega_c - RtRc * cmd.Omegadot_c);
  return u;
}

GeometricController::GeometricController(const PlantParams& p, const InertiaTable& t,
                                         ControllerConfig cfg)
    : plant_(p), table_(t), cfg_(std::move(cfg)) {
  cfg_.validate(p.n());
}

ControlSample GeometricController::operator()(const SystemState& s, double /*t*/) {
  const Vec3 A = ideal_thrust_A(s, table_, cfg_, plant_.g);
  const Mat3 Rc = desired_attitude(A, cfg_.b1_d);
  AttitudeCommand cmd;
  if (has_prev_) {
    cmd = desired_angular_velocity(prev_, Rc, cfg_.omega_c_dt, cfg_.omega_c_max,
                                   cfg_.omegadot_c_max);
  } else {
    cmd.R_c = Rc;  // no history yet: Omega_c = Omegadot_c = 0
  }
  prev_ = cmd;
  has_prev_ = true;

  ControlSample out;
  out.u = control_input(s, plant_.J, cfg_, cmd, A);
  out.Omega_c = cmd.Omega_c;
  out.psi_R = attitude_errors(s, cmd).Psi_R;
  return out;
}

FictitiousForceController::FictitiousForceController(const PlantParams& p,
                                                     const InertiaTable& t,
                                                     ControllerConfig cfg)
    : plant_(p), table_(t), cfg_(std::move(cfg)) {
  cfg_.validate(p.n());
}

ControlSample FictitiousForceController::operator()(const SystemState& s,
                                                    double /*t*/) const {
  ControlSample out;
  out.use_force = true;
  out.force = ideal_thrust_A(s, table_, cfg_, plant_.g);
  return out;
}

}  // namespace slung
