#ifndef SLUNG_GEOMETRY_HPP
#define SLUNG_GEOMETRY_HPP

#include <Eigen/Dense>

namespace slung {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline const Vec3 kE1{1.0, 0.0, 0.0};
inline const Vec3 kE2{0.0, 1.0, 0.0};
/// Third inertial axis; points along gravity.
inline const Vec3 kE3{0.0, 0.0, 1.0};

/// Default tolerance for the SO(3)/S^2 membership checks.
inline constexpr double kManifoldTol = 1e-9;

/// Skew-symmetric matrix of v, so that hat(v) * w == v.cross(w).
Mat3 hat(const Vec3& v);

/// Inverse of hat. Throws NotSkewError if the symmetric part of m
/// exceeds tol in Frobenius norm.
Vec3 vee(const Mat3& m, double tol = kManifoldTol);

/// Rotation matrix exp(hat(v)) by the Rodrigues formula, with a series
/// fallback below ||v|| = 1e-6.
Mat3 exp_so3(const Vec3& v);

/// Component of w tangent to the sphere at unit vector q: w - (q.w) q.
Vec3 project_tangent(const Vec3& q, const Vec3& w);

/// hat(q)^2; equals q q^T - I for unit q.
Mat3 q_squared_hat(const Vec3& q);

/// ||R^T R - I|| <= tol and det(R) > 0.
bool is_rotation(const Mat3& R, double tol = kManifoldTol);

/// | ||q|| - 1 | <= tol.
bool is_unit(const Vec3& q, double tol = kManifoldTol);

}  // namespace slung

#endif
