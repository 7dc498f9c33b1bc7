#ifndef SLUNG_PLANT_HPP
#define SLUNG_PLANT_HPP

#include <vector>

#include "slung/geometry.hpp"

namespace slung {

/// Quadrotor and cable-chain parameters. Each of the n links is a rigid
/// rod with its mass concentrated at the outboard end; the payload is the
/// mass of the last link.
struct PlantParams {
  double m = 0.5;                     // quadrotor mass [kg]
  Mat3 J = Mat3::Identity();          // quadrotor inertia [kg m^2], body frame
  std::vector<double> link_mass;      // m_i [kg], i = 1..n
  std::vector<double> link_length;    // l_i [m]
  double g = 9.81;                    // gravity [m/s^2], along +e3

  int n() const { return static_cast<int>(link_mass.size()); }

  /// Throws ValidationError if any invariant fails (m > 0, J SPD,
  /// n >= 1, all m_i > 0, l_i > 0).
  void validate() const;
};

/// Constant inertia coefficients of the chain. They depend only on the
/// masses and lengths, so both equation-of-motion forms share one table.
struct InertiaTable {
  double M00 = 0.0;               // m + sum_i m_i
  Eigen::VectorXd M0;             // M0[i-1] = (sum_{a=i..n} m_a) l_i
  Eigen::MatrixXd Mij;            // Mij(i-1,j-1) = (sum_{a=max(i,j)..n} m_a) l_i l_j
  Eigen::VectorXd tail_mass;      // tail_mass[i-1] = sum_{a=i..n} m_a

  int n() const { return static_cast<int>(M0.size()); }
};

InertiaTable build_inertia_table(const PlantParams& p);

/// Full configuration and velocity on R^3 x SO(3) x (S^2)^n.
/// x, v in the inertial frame; Omega in the body frame; q_i unit link
/// directions from the quadrotor toward the payload; omega_i link angular
/// velocities in the inertial frame with q_i . omega_i = 0.
struct SystemState {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Mat3 R = Mat3::Identity();
  Vec3 Omega = Vec3::Zero();
  std::vector<Vec3> q;
  std::vector<Vec3> omega;

  int n() const { return static_cast<int>(q.size()); }

  /// Checks unit q_i, tangency q_i . omega_i, and R in SO(3) within tol.
  void validate(double tol = kManifoldTol) const;

  /// True if every component is finite.
  bool all_finite() const;

  /// q_i / ||q_i|| and omega_i projected tangent; R untouched.
  void restore_constraints();

  /// qdot_i = omega_i x q_i.
  Vec3 qdot(int i) const { return omega[i].cross(q[i]); }
};

/// Thrust magnitude f [N] (thrust vector is -f R e3) and body moment M [N m].
struct ControlInput {
  double f = 0.0;
  Vec3 M = Vec3::Zero();
};

struct Accelerations {
  Vec3 xddot = Vec3::Zero();
  std::vector<Vec3> omegadot;
  Vec3 Omegadot = Vec3::Zero();
};

/// Inertial positions of the link endpoint masses, x_i = x + sum_{a<=i} l_a q_a.
std::vector<Vec3> link_positions(const SystemState& s, const PlantParams& p);

/// State with all links hanging (q_i = e3) at position x, everything at rest.
SystemState hanging_state(const PlantParams& p, const Vec3& x = Vec3::Zero());

}  // namespace slung

#endif
