#include "slung/plant.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "slung/errors.hpp"

namespace slung {

void PlantParams::validate() const {
  if (!(m > 0.0)) throw ValidationError("plant: quadrotor mass must be > 0");
  if (!(g > 0.0)) throw ValidationError("plant: gravity must be > 0");
  if ((J - J.transpose()).norm() > 1e-12 * std::max(1.0, J.norm())) {
    throw ValidationError("plant: inertia matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(J);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError("plant: inertia matrix must be positive-definite");
  }
  if (link_mass.empty()) throw ValidationError("plant: need at least one link (n >= 1)");
  if (link_mass.size() != link_length.size()) {
    throw ValidationError("plant: link_mass and link_length sizes differ");
  }
  for (std::size_t i = 0; i < link_mass.size(); ++i) {
    if (!(link_mass[i] > 0.0)) throw ValidationError("plant: link masses must be > 0");
    if (!(link_length[i] > 0.0)) throw ValidationError("plant: link lengths must be > 0");
  }
}

InertiaTable build_inertia_table(const PlantParams& p) {
  p.validate();
  const int n = p.n();
  InertiaTable t;
  t.tail_mass.resize(n);
  double tail = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    tail += p.link_mass[i];
    t.tail_mass[i] = tail;
  }
  t.M00 = p.m + tail;
  t.M0.resize(n);
  for (int i = 0; i < n; ++i) t.M0[i] = t.tail_mass[i] * p.link_length[i];
  t.Mij.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      t.Mij(i, j) = t.tail_mass[std::max(i, j)] * p.link_length[i] * p.link_length[j];
    }
  }
  return t;
}

void SystemState::validate(double tol) const {
  if (q.size() != omega.size()) throw ValidationError("state: q/omega sizes differ");
  if (!all_finite()) throw ValidationError("state: non-finite component");
  if (!is_rotation(R, tol)) throw ValidationError("state: R is not in SO(3)");
  for (int i = 0; i < n(); ++i) {
    if (!is_unit(q[i], tol)) {
      throw ValidationError("state: q_" + std::to_string(i + 1) + " is not unit");
    }
    if (std::abs(q[i].dot(omega[i])) > tol) {
      throw ValidationError("state: omega_" + std::to_string(i + 1) +
                            " is not tangent at q_" + std::to_string(i + 1));
    }
  }
}

bool SystemState::all_finite() const {
  auto ok3 = [](const Vec3& v) { return v.allFinite(); };
  if (!ok3(x) || !ok3(v) || !ok3(Omega) || !R.allFinite()) return false;
  for (const auto& qi : q) {
    if (!ok3(qi)) return false;
  }
  for (const auto& wi : omega) {
    if (!ok3(wi)) return false;
  }
  return true;
}

void SystemState::restore_constraints() {
  for (int i = 0; i < n(); ++i) {
    q[i].normalize();
    omega[i] = project_tangent(q[i], omega[i]);
  }
}

std::vector<Vec3> link_positions(const SystemState& s, const PlantParams& p) {
  std::vector<Vec3> xs(s.n());
  Vec3 pos = s.x;
  for (int i = 0; i < s.n(); ++i) {
    pos += p.link_length[i] * s.q[i];
    xs[i] = pos;
  }
  return xs;
}

SystemState hanging_state(const PlantParams& p, const Vec3& x) {
  SystemState s;
  s.x = x;
  s.q.assign(p.n(), kE3);
  s.omega.assign(p.n(), Vec3::Zero());
  return s;
}

}  // namespace slung
