#ifndef SLUNG_COMMANDS_HPP
#define SLUNG_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "slung/scenario.hpp"
#include "slung/trajectory.hpp"

namespace slung {

/// Result of one simulate run, for summaries and tests.
struct SimulateResult {
  TrajectoryLog log;
  double final_position_error = 0.0;  // ||x(T) - x_d||
  double final_e_q = 0.0;
  double final_e_omega = 0.0;
  double f_min = 0.0;
  double f_max = 0.0;
  double energy_drift_rel = 0.0;      // |E(T) - E(0)| / max(1, |E(0)|)
};

/// Runs the scenario and writes trajectory.csv, summary.txt and the
/// gnuplot-ready panel data (position, link errors, body rate vs command,
/// control) into out_dir. Creates out_dir if needed.
SimulateResult cmd_simulate(const ScenarioConfig& cfg, const std::string& out_dir);

/// Writes the linearized model (linear_M.csv, linear_G.csv, linear_B.csv)
/// and a summary with the controllability rank. Returns the rank.
int cmd_linearize(const ScenarioConfig& cfg, const std::string& out_dir);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the numerical property suite (energy, momentum, cross-form
/// equivalence, n=1 oracle, linearization slope, Lyapunov certificates)
/// and prints one PASS/FAIL line per check. Returns 0 iff all pass.
int cmd_verify(const ScenarioConfig& cfg, unsigned long seed, std::ostream& os,
               std::vector<VerifyCheck>* results = nullptr);

}  // namespace slung

#endif
