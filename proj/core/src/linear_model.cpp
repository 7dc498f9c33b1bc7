#include "slung/linear_model.hpp"

#include <fstream>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "slung/errors.hpp"
#include "slung/trajectory.hpp"

namespace slung {

LinearModel build_linear_model(const PlantParams& p) {
  p.validate();
  const InertiaTable t = build_inertia_table(p);
  const int n = p.n();
  const int d = 3 + 2 * n;
  LinearModel lm;
  lm.M = Eigen::MatrixXd::Zero(d, d);
  lm.G = Eigen::MatrixXd::Zero(d, d);
  lm.B = Eigen::MatrixXd::Zero(d, 3);

  Eigen::Matrix<double, 3, 2> C;
  C << 1, 0, 0, 1, 0, 0;
  const Eigen::Matrix<double, 3, 2> e3hatC = hat(kE3) * C;

  lm.M.topLeftCorner<3, 3>() = t.M00 * Mat3::Identity();
  for (int i = 0; i < n; ++i) {
    lm.M.block<3, 2>(0, 3 + 2 * i) = -t.M0[i] * e3hatC;
    lm.M.block<2, 3>(3 + 2 * i, 0) = (-t.M0[i] * e3hatC).transpose();
    for (int j = 0; j < n; ++j) {
      lm.M.block<2, 2>(3 + 2 * i, 3 + 2 * j) = t.Mij(i, j) * Eigen::Matrix2d::Identity();
    }
    lm.G.block<2, 2>(3 + 2 * i, 3 + 2 * i) =
        t.tail_mass[i] * p.g * p.link_length[i] * Eigen::Matrix2d::Identity();
  }
  lm.B.topLeftCorner<3, 3>() = Mat3::Identity();
  return lm;
}

namespace {

Eigen::MatrixXd solve_mass(const LinearModel& lm, const Eigen::MatrixXd& rhs) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(lm.M);
  const auto diag = lu.matrixLU().diagonal().cwiseAbs();
  if (!(diag.minCoeff() > 0.0) || diag.maxCoeff() / diag.minCoeff() > 1e12) {
    throw SingularMassMatrixError("linear model mass matrix is singular");
  }
  return lu.solve(rhs);
}

}  // namespace

Eigen::VectorXd linear_accelerations(const LinearModel& lm, const LinearState& ls,
                                     const Vec3& du) {
  if (ls.pos.size() != lm.dim() || ls.vel.size() != lm.dim()) {
    throw ValidationError("linear_accelerations: state dimension mismatch");
  }
  return solve_mass(lm, lm.B * du - lm.G * ls.pos);
}

int controllability_rank(const LinearModel& lm) {
  const int nq = lm.dim();
  const int d = 2 * nq;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
  A.topRightCorner(nq, nq) = Eigen::MatrixXd::Identity(nq, nq);
  A.bottomLeftCorner(nq, nq) = -solve_mass(lm, lm.G);
  Eigen::MatrixXd Bt = Eigen::MatrixXd::Zero(d, 3);
  Bt.bottomRows(nq) = solve_mass(lm, lm.B);

  Eigen::MatrixXd K(d, 3 * d);
  Eigen::MatrixXd blk = Bt;
  for (int k = 0; k < d; ++k) {
    const double norm = blk.norm();
    K.middleCols(3 * k, 3) = norm > 0.0 ? (blk / norm).eval() : blk;
    blk = A * blk;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
  const auto& sv = svd.singularValues();
  const double thresh = sv(0) * d * 1e-12;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > thresh) ++rank;
  }
  return rank;
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  os << m.rows() << "," << m.cols() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? "," : "") << format_double(m(i, j));
    }
    os << "\n";
  }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw ParseError(path + ": empty file");
  Eigen::Index rows = 0, cols = 0;
  {
    std::stringstream ss(line);
    char comma = 0;
    if (!(ss >> rows >> comma >> cols) || comma != ',' || rows < 0 || cols < 0) {
      throw ParseError(path + ": bad dimension header '" + line + "'");
    }
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!std::getline(is, line)) throw ParseError(path + ": missing data row");
    std::stringstream ss(line);
    std::string cell;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!std::getline(ss, cell, ',')) throw ParseError(path + ": short data row");
      m(i, j) = std::stod(cell);
    }
  }
  return m;
}

}  // namespace slung
