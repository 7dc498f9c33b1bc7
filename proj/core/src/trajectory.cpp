#include "slung/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "slung/errors.hpp"

namespace slung {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::vector<std::string> TrajectoryLog::header() const {
  std::vector<std::string> h = {"t", "x1", "x2", "x3", "v1", "v2", "v3"};
  const char* rc[] = {"R11", "R12", "R13", "R21", "R22", "R23", "R31", "R32", "R33"};
  h.insert(h.end(), std::begin(rc), std::end(rc));
  h.insert(h.end(), {"W1", "W2", "W3"});
  for (int i = 1; i <= n_links; ++i) {
    for (int c = 1; c <= 3; ++c) h.push_back("q" + std::to_string(i) + "_" + std::to_string(c));
  }
  for (int i = 1; i <= n_links; ++i) {
    for (int c = 1; c <= 3; ++c) h.push_back("w" + std::to_string(i) + "_" + std::to_string(c));
  }
  h.insert(h.end(), {"f", "M1", "M2", "M3", "Wc1", "Wc2", "Wc3",
                     "E", "p1", "p2", "p3", "e_q", "e_w", "Psi_R"});
  return h;
}

std::vector<double> TrajectoryLog::row(std::size_t k) const {
  const TrajectorySample& s = samples[k];
  std::vector<double> r;
  r.reserve(27 + 6 * n_links + 8);
  r.push_back(s.t);
  for (int c = 0; c < 3; ++c) r.push_back(s.state.x[c]);
  for (int c = 0; c < 3; ++c) r.push_back(s.state.v[c]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r.push_back(s.state.R(i, j));
  }
  for (int c = 0; c < 3; ++c) r.push_back(s.state.Omega[c]);
  for (int i = 0; i < n_links; ++i) {
    for (int c = 0; c < 3; ++c) r.push_back(s.state.q[i][c]);
  }
  for (int i = 0; i < n_links; ++i) {
    for (int c = 0; c < 3; ++c) r.push_back(s.state.omega[i][c]);
  }
  r.push_back(s.u.f);
  for (int c = 0; c < 3; ++c) r.push_back(s.u.M[c]);
  for (int c = 0; c < 3; ++c) r.push_back(s.Omega_c[c]);
  r.push_back(s.energy);
  for (int c = 0; c < 3; ++c) r.push_back(s.momentum[c]);
  r.push_back(s.e_q);
  r.push_back(s.e_omega);
  r.push_back(s.psi_R);
  return r;
}

void write_csv(const TrajectoryLog& log, std::ostream& os) {
  const auto h = log.header();
  for (std::size_t i = 0; i < h.size(); ++i) {
    os << (i ? "," : "") << h[i];
  }
  os << "\n";
  for (std::size_t k = 0; k < log.samples.size(); ++k) {
    const auto r = log.row(k);
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "," : "") << format_double(r[i]);
    }
    os << "\n";
  }
}

void write_csv(const TrajectoryLog& log, const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!os) throw ValidationError("cannot open for writing: " + path);
  write_csv(log, os);
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw ParseError(path + ": empty file");
  if (header) {
    header->clear();
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header->push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace slung
