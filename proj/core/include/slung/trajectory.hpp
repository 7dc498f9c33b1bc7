#ifndef SLUNG_TRAJECTORY_HPP
#define SLUNG_TRAJECTORY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "slung/plant.hpp"

namespace slung {

/// One decimated sample of a simulation run.
struct TrajectorySample {
  double t = 0.0;
  SystemState state;
  ControlInput u;
  Vec3 Omega_c = Vec3::Zero();  // commanded body rate (zero when uncontrolled)
  double energy = 0.0;
  Vec3 momentum = Vec3::Zero();
  double e_q = 0.0;
  double e_omega = 0.0;
  double psi_R = 0.0;
};

struct TrajectoryLog {
  int n_links = 0;
  double sample_dt = 0.0;  // spacing between samples [s]
  std::vector<TrajectorySample> samples;

  /// Column names, in emission order.
  std::vector<std::string> header() const;

  /// Flattened row for sample k, matching header().
  std::vector<double> row(std::size_t k) const;
};

/// Writes the log as CSV (header row, LF endings, 17 significant digits).
void write_csv(const TrajectoryLog& log, std::ostream& os);
void write_csv(const TrajectoryLog& log, const std::string& path);

/// Reads back a CSV produced by write_csv (used for round-trip checks and
/// by downstream tooling). Throws ParseError on malformed input.
std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header = nullptr);

/// Formats one double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace slung

#endif
