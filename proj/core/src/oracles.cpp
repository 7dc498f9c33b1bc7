#include "slung/oracles.hpp"

#include <cmath>
#include <functional>

#include <Eigen/LU>

#include "slung/chain_dynamics.hpp"
#include "slung/errors.hpp"

namespace slung {

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

Vec3 chart_q(double th, double ph) {
  return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}

Vec3 chart_dq_dth(double th, double ph) {
  return {std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)};
}

Vec3 chart_dq_dph(double th, double ph) {
  return {-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0};
}

/// 4th-order central first derivative of f at 0 with spacing h.
double central4(const std::function<double(double)>& f, double h) {
  return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

Mat5 central4_mat(const std::function<Mat5(double)>& f, double h) {
  return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

}  // namespace

std::pair<Vec3, Vec3> pendulum_oracle_accelerations(const PlantParams& p,
                                                    const SystemState& s, double f,
                                                    double fd_step) {
  if (p.n() != 1 || s.n() != 1) {
    throw ValidationError("pendulum oracle: needs exactly one link");
  }
  if (std::abs(s.q[0].z()) > 0.95) {
    throw ValidationError("pendulum oracle: link too close to the chart poles");
  }
  const InertiaTable t = build_inertia_table(p);

  const double th = std::acos(std::clamp(s.q[0].z(), -1.0, 1.0));
  const double ph = std::atan2(s.q[0].y(), s.q[0].x());
  Eigen::Matrix<double, 3, 2> Jq;
  Jq.col(0) = chart_dq_dth(th, ph);
  Jq.col(1) = chart_dq_dph(th, ph);
  const Vec3 qdot = s.qdot(0);
  const Eigen::Vector2d angrate =
      (Jq.transpose() * Jq).ldlt().solve(Jq.transpose() * qdot);

  Vec5 gen, gend;
  gen << s.x, th, ph;
  gend << s.v, angrate;

  // Lagrangian in minimal coordinates; evaluated from scratch so that every
  // dependency of qdot on (coordinates, rates) is carried through.
  const auto L = [&](const Vec5& g_, const Vec5& v_) {
    const Vec3 q = chart_q(g_[3], g_[4]);
    const Vec3 qd = chart_dq_dth(g_[3], g_[4]) * v_[3] + chart_dq_dph(g_[3], g_[4]) * v_[4];
    const Vec3 xv = g_.head<3>();
    const Vec3 sv = v_.head<3>();
    const double T = 0.5 * t.M00 * sv.squaredNorm() + t.M0[0] * sv.dot(qd) +
                     0.5 * t.Mij(0, 0) * qd.squaredNorm();
    const double V = -p.g * t.M0[0] * kE3.dot(q) - t.M00 * p.g * kE3.dot(xv);
    return T - V;
  };

  // L is exactly quadratic in the rates, so the velocity Hessian follows
  // from four evaluations per entry with no truncation error.
  const auto hessian = [&](const Vec5& g_) {
    Mat5 A;
    const double L0 = L(g_, Vec5::Zero());
    Vec5 Ls;
    for (int i = 0; i < 5; ++i) Ls[i] = L(g_, Vec5::Unit(i));
    for (int i = 0; i < 5; ++i) {
      for (int j = i; j < 5; ++j) {
        A(i, j) = A(j, i) = L(g_, Vec5::Unit(i) + Vec5::Unit(j)) - Ls[i] - Ls[j] + L0;
      }
    }
    return A;
  };

  const Mat5 A = hessian(gen);
  Vec5 dLds;
  Mat5 Adot = Mat5::Zero();
  for (int k = 0; k < 5; ++k) {
    dLds[k] = central4([&](double o) { return L(gen + o * Vec5::Unit(k), gend); }, fd_step);
    Adot += central4_mat([&](double o) { return hessian(gen + o * Vec5::Unit(k)); },
                         fd_step) *
            gend[k];
  }

  Vec5 Q = Vec5::Zero();
  Q.head<3>() = -f * (s.R * kE3);  // thrust acts at the pivot only

  const Vec5 sdd = A.partialPivLu().solve(Q + dLds - Adot * gend);

  const double thd = angrate[0], phd = angrate[1];
  const Vec3 d2q_dth2 = -chart_q(th, ph);
  const Vec3 d2q_dph2{-std::sin(th) * std::cos(ph), -std::sin(th) * std::sin(ph), 0.0};
  const Vec3 d2q_dthdph{-std::cos(th) * std::sin(ph), std::cos(th) * std::cos(ph), 0.0};
  const Vec3 qdd = Jq * sdd.tail<2>() + d2q_dth2 * thd * thd +
                   2.0 * d2q_dthdph * thd * phd + d2q_dph2 * phd * phd;
  // omega = q x qdot, so omegadot = q x qddot
  return {sdd.head<3>(), s.q[0].cross(qdd)};
}

}  // namespace slung
