#include "slung/geometry.hpp"

#include <cmath>

#include "slung/errors.hpp"

namespace slung {

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
      v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m, double tol) {
  const Mat3 sym = 0.5 * (m + m.transpose());
  if (sym.norm() > tol) {
    throw NotSkewError("vee: symmetric part norm " + std::to_string(sym.norm()) +
                       " exceeds tolerance");
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Mat3 exp_so3(const Vec3& v) {
  const double theta2 = v.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a, b;  // R = I + a hat(v) + b hat(v)^2
  if (theta < 1e-6) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 vh = hat(v);
  return Mat3::Identity() + a * vh + b * vh * vh;
}

Vec3 project_tangent(const Vec3& q, const Vec3& w) {
  return w - q.dot(w) * q;
}

Mat3 q_squared_hat(const Vec3& q) {
  const Mat3 qh = hat(q);
  return qh * qh;
}

bool is_rotation(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).norm() <= tol && R.determinant() > 0.0;
}

bool is_unit(const Vec3& q, double tol) {
  return std::abs(q.norm() - 1.0) <= tol;
}

}  // namespace slung
