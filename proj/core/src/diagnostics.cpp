#include "slung/diagnostics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "slung/errors.hpp"

namespace slung {

std::pair<double, double> link_error_metrics(const SystemState& s) {
  double eq = 0.0, ew = 0.0;
  for (int i = 0; i < s.n(); ++i) {
    eq += (s.q[i] - kE3).norm();
    ew += s.omega[i].norm();
  }
  return {eq, ew};
}

namespace {

std::pair<double, double> inertia_extremes(const Mat3& J) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(J);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace

double c3_bound(double kR, double kOmega, const Mat3& J) {
  if (!(kR > 0.0) || !(kOmega > 0.0)) {
    throw ValidationError("c3_bound: gains must be > 0");
  }
  const auto [lm, lM] = inertia_extremes(J);
  if (!(lm > 0.0)) throw ValidationError("c3_bound: J must be positive-definite");
  const double branch1 = std::sqrt(kR * lm);
  const double branch2 = 4.0 * kR * kOmega * lm * lm /
                         (kOmega * kOmega * lM + 4.0 * kR * lm * lm);
  return std::min(branch1, branch2);
}

LyapunovReport lyapunov_matrices(double kR, double kOmega, const Mat3& J, double c3,
                                 double psi_R) {
  if (!(psi_R > 0.0) || !(psi_R < 2.0)) {
    throw ValidationError("lyapunov_matrices: psi_R must lie in (0, 2)");
  }
  LyapunovReport rep;
  rep.c3_bound = c3_bound(kR, kOmega, J);
  rep.c3_used = c3;
  rep.psi_R = psi_R;
  if (c3 >= rep.c3_bound) {
    throw C3TooLargeError("lyapunov_matrices: c3 = " + std::to_string(c3) +
                          " >= bound " + std::to_string(rep.c3_bound));
  }
  const auto [lm, lM] = inertia_extremes(J);
  rep.L1 << kR / 2.0, -c3 / 2.0,
      -c3 / 2.0, lm / 2.0;
  rep.L2 << kR / (2.0 - psi_R), c3 / 2.0,
      c3 / 2.0, lM / 2.0;
  rep.U << c3 * kR / lM, -c3 * kOmega / (2.0 * lm),
      -c3 * kOmega / (2.0 * lm), kOmega - c3;
  auto min_eig = [](const Eigen::Matrix2d& m) {
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues().minCoeff();
  };
  rep.min_eig_L1 = min_eig(rep.L1);
  rep.min_eig_L2 = min_eig(rep.L2);
  rep.min_eig_U = min_eig(rep.U);
  return rep;
}

double lyapunov_value(const Vec3& e_R, const Vec3& e_Omega, double psi_R_value,
                      const Mat3& J, double kR, double c3, double eps) {
  return 0.5 * e_Omega.dot(J * e_Omega) + kR / (eps * eps) * psi_R_value +
         c3 / eps * e_R.dot(e_Omega);
}

}  // namespace slung
