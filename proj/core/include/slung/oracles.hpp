#ifndef SLUNG_ORACLES_HPP
#define SLUNG_ORACLES_HPP

#include <utility>

#include "slung/plant.hpp"

namespace slung {

/// Reference accelerations (xddot, omegadot_1) for the single-link system,
/// computed independently of the manifold formulation: the Lagrangian is
/// written in minimal coordinates (x, theta, phi) with q = (sin th cos ph,
/// sin th sin ph, cos th), and the Euler-Lagrange system is assembled by
/// numerical differentiation (exact quadratic extraction of the velocity
/// Hessian, 4th-order central stencils elsewhere) and solved densely.
///
/// Requires n == 1 and the link away from the chart poles
/// (|q . e3| <= 0.95). fd_step is the stencil spacing.
std::pair<Vec3, Vec3> pendulum_oracle_accelerations(const PlantParams& p,
                                                    const SystemState& s, double f,
                                                    double fd_step = 3e-3);

}  // namespace slung

#endif
