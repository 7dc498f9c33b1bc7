#ifndef SLUNG_SCENARIO_HPP
#define SLUNG_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "slung/controller.hpp"
#include "slung/integrator.hpp"
#include "slung/plant.hpp"

namespace slung {

/// Initial-state specification. Link directions come either from an
/// explicit list or from the horizontal-arc generator
/// q_i = exp_so3(theta_i e2) e3, theta_i spaced from theta_max down to
/// theta_max / n.
struct InitialSpec {
  Vec3 x = Vec3{0.6, -0.7, 0.2};
  Vec3 v = Vec3::Zero();
  Mat3 R = Mat3::Identity();
  Vec3 Omega = Vec3::Zero();
  std::optional<double> arc_theta_max = 1.5707963267948966;  // pi/2
  std::vector<Vec3> q;                                        // used when no generator
  std::vector<Vec3> omega;                                    // empty => all zero
};

struct OutputSpec {
  std::string dir = "out";
  int decimation = 10;
};

struct VerifySpec {
  std::optional<double> c3;  // absolute; default 0.5 * c3_bound
  double psi_R = 1.0;
};

struct ScenarioConfig {
  PlantParams plant;
  ControllerConfig controller;
  bool controller_enabled = true;
  IntegratorConfig integrator;
  InitialSpec initial;
  double duration = 10.0;
  OutputSpec output;
  VerifySpec verify;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  /// Initial SystemState with constraints restored.
  SystemState initial_state() const;
};

/// Link directions of the horizontal-arc generator.
std::vector<Vec3> horizontal_arc(int n, double theta_max);

/// Section V of the reference experiment: 0.5 kg quadrotor, five 0.1 kg /
/// 0.1 m links, the published gain set, x(0) = [0.6, -0.7, 0.2], pi/2 arc.
ScenarioConfig default_scenario();

/// Parses the INI-style scenario file; every omitted field keeps its
/// default (an empty file yields default_scenario()). Throws ParseError
/// with line information, or ValidationError from validate().
ScenarioConfig parse_scenario(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& name = "<string>");

}  // namespace slung

#endif
