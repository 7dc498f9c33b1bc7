#ifndef SLUNG_CHAIN_DYNAMICS_HPP
#define SLUNG_CHAIN_DYNAMICS_HPP

#include <utility>
#include <vector>

#include "slung/plant.hpp"

namespace slung {

/// Condition-estimate limit for the dense mass-matrix solves; past this the
/// solve throws SingularMassMatrixError.
inline constexpr double kMassMatrixCondLimit = 1e12;

/// Mass matrix of the equations of motion in the angular-velocity form,
/// size (3+3n) x (3+3n), unknowns (xddot, omegadot_1..omegadot_n).
/// Blocks: (0,0) M00 I; (0,i) -M0i hat(q_i); (i,0) Mi0 hat(q_i);
/// (i,i) Mii I; (i,j) -Mij hat(q_i) hat(q_j). Symmetric by construction.
Eigen::MatrixXd mass_matrix_omega_form(const InertiaTable& t, const SystemState& s);

/// Right-hand side of the angular-velocity form for a given inertial thrust
/// vector (the physical input contributes thrust = -f R e3).
/// Row 0: sum_j M0j ||w_j||^2 q_j + thrust + M00 g e3.
/// Row i: sum_{j != i} Mij ||w_j||^2 hat(q_i) q_j + g M0i hat(q_i) e3.
Eigen::VectorXd rhs_omega_form_force(const InertiaTable& t, const SystemState& s,
                                     const Vec3& thrust, double g);

Eigen::VectorXd rhs_omega_form(const InertiaTable& t, const SystemState& s,
                               const ControlInput& u, double g);

/// Solves the angular-velocity form plus the decoupled attitude equation
/// J Omegadot + Omega x J Omega = M. Each omegadot_i is re-projected onto
/// the tangent plane at q_i after the solve.
Accelerations accelerations(const PlantParams& p, const InertiaTable& t,
                            const SystemState& s, const ControlInput& u);

/// Same solve with the thrust term -f R e3 replaced by a free force vector
/// (the simplified dynamic model used for linearization and the reduced
/// system). The moment input is still honored for the attitude equation.
Accelerations accelerations_force(const PlantParams& p, const InertiaTable& t,
                                  const SystemState& s, const Vec3& force,
                                  const Vec3& moment = Vec3::Zero());

/// Solves the qddot form of the same equations: blocks (0,j) = M0j I,
/// (i,0) = -hat(q_i)^2 Mi0, (i,j) = -Mij hat(q_i)^2, diag Mii I; RHS row i
/// = -||qdot_i||^2 Mii q_i - g M0i hat(q_i)^2 e3. Returns (xddot, qddot_i).
/// Kept as a cross-validation route for the production omega form.
std::pair<Vec3, std::vector<Vec3>> qddot_form_accelerations(const InertiaTable& t,
                                                            const SystemState& s,
                                                            const ControlInput& u,
                                                            double g);

std::pair<Vec3, std::vector<Vec3>> qddot_form_accelerations_force(
    const InertiaTable& t, const SystemState& s, const Vec3& thrust, double g);

/// Total mechanical energy T + V [J].
double total_energy(const PlantParams& p, const InertiaTable& t, const SystemState& s);

/// Generalized translational momentum M00 xdot + sum_i M0i (omega_i x q_i).
Vec3 generalized_momentum(const InertiaTable& t, const SystemState& s);

}  // namespace slung

#endif
