#ifndef SLUNG_LINEAR_MODEL_HPP
#define SLUNG_LINEAR_MODEL_HPP

#include <string>
#include <utility>

#include "slung/plant.hpp"

namespace slung {

/// Linearization of the simplified dynamics about the hanging equilibrium:
/// M xddot + G x = B du, state x = [dx; C^T xi_1; ...; C^T xi_n] of size
/// 3 + 2n, with C = [e1, e2].
struct LinearModel {
  Eigen::MatrixXd M;  // (3+2n) x (3+2n), symmetric
  Eigen::MatrixXd G;  // same size, zero except the positive diagonal qq block
  Eigen::MatrixXd B;  // (3+2n) x 3, [I3; 0]

  int dim() const { return static_cast<int>(M.rows()); }
};

/// Reduced-state vector and its derivative for linear_accelerations.
struct LinearState {
  Eigen::VectorXd pos;  // [dx; C^T xi_i]
  Eigen::VectorXd vel;  // [dxdot; C^T domega_i]
};

LinearModel build_linear_model(const PlantParams& p);

/// Solves M a = B du - G pos for the reduced accelerations.
Eigen::VectorXd linear_accelerations(const LinearModel& lm, const LinearState& ls,
                                     const Vec3& du);

/// Rank of the controllability matrix [B~, A~B~, ..., A~^(d-1)B~] of the
/// first-order system of dimension d = 2(3+2n). Each power block is
/// normalized to unit Frobenius norm before the SVD (rank-preserving; the
/// raw blocks span too many orders of magnitude for double precision) and
/// singular values are thresholded at sigma_max * d * 1e-12.
int controllability_rank(const LinearModel& lm);

/// Writes a matrix as CSV: first line "rows,cols", then row-major data
/// rows with 17 significant digits.
void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

}  // namespace slung

#endif
