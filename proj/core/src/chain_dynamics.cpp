#include "slung/chain_dynamics.hpp"

#include <cmath>

#include <Eigen/LU>

#include "slung/errors.hpp"

namespace slung {

namespace {

/// Dense LU solve with a cheap condition estimate from the factor diagonal.
Eigen::VectorXd solve_checked(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const char* what) {
  if (!A.allFinite() || !b.allFinite()) {
    throw NonFiniteError(std::string(what) + ": non-finite dynamics input");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const auto diag = lu.matrixLU().diagonal().cwiseAbs();
  const double dmax = diag.maxCoeff();
  const double dmin = diag.minCoeff();
  if (!(dmin > 0.0) || dmax / dmin > kMassMatrixCondLimit) {
    throw SingularMassMatrixError(std::string(what) + ": condition estimate " +
                                  (dmin > 0.0 ? std::to_string(dmax / dmin) : "inf") +
                                  " exceeds limit");
  }
  return lu.solve(b);
}

Vec3 attitude_acceleration(const PlantParams& p, const SystemState& s, const Vec3& M) {
  return p.J.ldlt().solve(M - s.Omega.cross(p.J * s.Omega));
}

}  // namespace

Eigen::MatrixXd mass_matrix_omega_form(const InertiaTable& t, const SystemState& s) {
  const int n = t.n();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 + 3 * n, 3 + 3 * n);
  A.topLeftCorner<3, 3>() = t.M00 * Mat3::Identity();
  std::vector<Mat3> qh(n);
  for (int i = 0; i < n; ++i) qh[i] = hat(s.q[i]);
  for (int i = 0; i < n; ++i) {
    A.block<3, 3>(0, 3 + 3 * i) = -t.M0[i] * qh[i];
    A.block<3, 3>(3 + 3 * i, 0) = t.M0[i] * qh[i];
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        A.block<3, 3>(3 + 3 * i, 3 + 3 * i) = t.Mij(i, i) * Mat3::Identity();
      } else {
        A.block<3, 3>(3 + 3 * i, 3 + 3 * j) = -t.Mij(i, j) * qh[i] * qh[j];
      }
    }
  }
  return A;
}

Eigen::VectorXd rhs_omega_form_force(const InertiaTable& t, const SystemState& s,
                                     const Vec3& thrust, double g) {
  const int n = t.n();
  Eigen::VectorXd b(3 + 3 * n);
  Vec3 row0 = thrust + t.M00 * g * kE3;
  for (int j = 0; j < n; ++j) {
    row0 += t.M0[j] * s.omega[j].squaredNorm() * s.q[j];
  }
  b.head<3>() = row0;
  for (int i = 0; i < n; ++i) {
    const Mat3 qh = hat(s.q[i]);
    Vec3 row = g * t.M0[i] * (qh * kE3);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      row += t.Mij(i, j) * s.omega[j].squaredNorm() * (qh * s.q[j]);
    }
    b.segment<3>(3 + 3 * i) = row;
  }
  return b;
}

Eigen::VectorXd rhs_omega_form(const InertiaTable& t, const SystemState& s,
                               const ControlInput& u, double g) {
  return rhs_omega_form_force(t, s, -u.f * (s.R * kE3), g);
}

namespace {

Accelerations solve_omega_form(const PlantParams& p, const InertiaTable& t,
                               const SystemState& s, const Vec3& thrust,
                               const Vec3& moment) {
  const int n = t.n();
  const Eigen::MatrixXd A = mass_matrix_omega_form(t, s);
  const Eigen::VectorXd b = rhs_omega_form_force(t, s, thrust, p.g);
  const Eigen::VectorXd sol = solve_checked(A, b, "omega-form mass matrix");
  Accelerations acc;
  acc.xddot = sol.head<3>();
  acc.omegadot.resize(n);
  for (int i = 0; i < n; ++i) {
    acc.omegadot[i] = project_tangent(s.q[i], sol.segment<3>(3 + 3 * i));
  }
  acc.Omegadot = attitude_acceleration(p, s, moment);
  return acc;
}

}  // namespace

Accelerations accelerations(const PlantParams& p, const InertiaTable& t,
                            const SystemState& s, const ControlInput& u) {
  return solve_omega_form(p, t, s, -u.f * (s.R * kE3), u.M);
}

Accelerations accelerations_force(const PlantParams& p, const InertiaTable& t,
                                  const SystemState& s, const Vec3& force,
                                  const Vec3& moment) {
  return solve_omega_form(p, t, s, force, moment);
}

namespace {

std::pair<Vec3, std::vector<Vec3>> solve_qddot_form(const InertiaTable& t,
                                                    const SystemState& s,
                                                    const Vec3& thrust, double g) {
  const int n = t.n();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 + 3 * n, 3 + 3 * n);
  Eigen::VectorXd b(3 + 3 * n);
  A.topLeftCorner<3, 3>() = t.M00 * Mat3::Identity();
  for (int j = 0; j < n; ++j) {
    A.block<3, 3>(0, 3 + 3 * j) = t.M0[j] * Mat3::Identity();
  }
  b.head<3>() = thrust + t.M00 * g * kE3;
  for (int i = 0; i < n; ++i) {
    const Mat3 qi2 = q_squared_hat(s.q[i]);
    A.block<3, 3>(3 + 3 * i, 0) = -qi2 * t.M0[i];
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        A.block<3, 3>(3 + 3 * i, 3 + 3 * i) = t.Mij(i, i) * Mat3::Identity();
      } else {
        A.block<3, 3>(3 + 3 * i, 3 + 3 * j) = -t.Mij(i, j) * qi2;
      }
    }
    const Vec3 qd = s.qdot(i);
    b.segment<3>(3 + 3 * i) =
        -qd.squaredNorm() * t.Mij(i, i) * s.q[i] - g * t.M0[i] * (qi2 * kE3);
  }
  const Eigen::VectorXd sol = solve_checked(A, b, "qddot-form mass matrix");
  std::vector<Vec3> qdd(n);
  for (int i = 0; i < n; ++i) qdd[i] = sol.segment<3>(3 + 3 * i);
  return {sol.head<3>(), std::move(qdd)};
}

}  // namespace

std::pair<Vec3, std::vector<Vec3>> qddot_form_accelerations(const InertiaTable& t,
                                                            const SystemState& s,
                                                            const ControlInput& u,
                                                            double g) {
  return solve_qddot_form(t, s, -u.f * (s.R * kE3), g);
}

std::pair<Vec3, std::vector<Vec3>> qddot_form_accelerations_force(
    const InertiaTable& t, const SystemState& s, const Vec3& thrust, double g) {
  return solve_qddot_form(t, s, thrust, g);
}

double total_energy(const PlantParams& p, const InertiaTable& t, const SystemState& s) {
  const int n = t.n();
  std::vector<Vec3> qd(n);
  for (int i = 0; i < n; ++i) qd[i] = s.qdot(i);
  double T = 0.5 * t.M00 * s.v.squaredNorm() + 0.5 * s.Omega.dot(p.J * s.Omega);
  for (int i = 0; i < n; ++i) {
    T += t.M0[i] * s.v.dot(qd[i]);
    for (int j = 0; j < n; ++j) {
      T += 0.5 * t.Mij(i, j) * qd[i].dot(qd[j]);
    }
  }
  double V = -t.M00 * p.g * kE3.dot(s.x);
  for (int i = 0; i < n; ++i) {
    V -= p.g * t.M0[i] * kE3.dot(s.q[i]);
  }
  return T + V;
}

Vec3 generalized_momentum(const InertiaTable& t, const SystemState& s) {
  Vec3 mom = t.M00 * s.v;
  for (int i = 0; i < t.n(); ++i) {
    mom += t.M0[i] * s.qdot(i);
  }
  return mom;
}

}  // namespace slung
