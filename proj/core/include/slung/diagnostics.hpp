#ifndef SLUNG_DIAGNOSTICS_HPP
#define SLUNG_DIAGNOSTICS_HPP

#include <utility>

#include "slung/plant.hpp"

namespace slung {

/// Aggregate link errors: e_q = sum_i ||q_i - e3||, e_omega = sum_i ||omega_i||.
std::pair<double, double> link_error_metrics(const SystemState& s);

/// Largest admissible c3 for the attitude Lyapunov function:
/// min( sqrt(kR lam_min(J)),
///      4 kR kW lam_min^2(J) / (kW^2 lam_max(J) + 4 kR lam_min^2(J)) ).
double c3_bound(double kR, double kOmega, const Mat3& J);

/// The three 2x2 certificates of the attitude error dynamics, evaluated for
/// given gains, inertia, cross-term weight c3 and domain bound psi_R < 2.
struct LyapunovReport {
  double c3_bound = 0.0;
  double c3_used = 0.0;
  double psi_R = 0.0;
  Eigen::Matrix2d L1, L2, U;
  double min_eig_L1 = 0.0;
  double min_eig_L2 = 0.0;
  double min_eig_U = 0.0;

  bool all_positive_definite() const {
    return min_eig_L1 > 0.0 && min_eig_L2 > 0.0 && min_eig_U > 0.0;
  }
};

/// Throws C3TooLargeError if c3 >= c3_bound, ValidationError for psi_R
/// outside (0, 2) or non-positive gains.
LyapunovReport lyapunov_matrices(double kR, double kOmega, const Mat3& J, double c3,
                                 double psi_R);

/// Attitude Lyapunov value W = 1/2 eW.J eW + (kR/eps^2) Psi_R + (c3/eps) eR.eW.
double lyapunov_value(const Vec3& e_R, const Vec3& e_Omega, double psi_R_value,
                      const Mat3& J, double kR, double c3, double eps = 1.0);

}  // namespace slung

#endif
