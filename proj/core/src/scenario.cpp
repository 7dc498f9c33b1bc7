#include "slung/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "slung/errors.hpp"

namespace slung {

std::vector<Vec3> horizontal_arc(int n, double theta_max) {
  std::vector<Vec3> q(n);
  for (int i = 1; i <= n; ++i) {
    // theta_max down to theta_max / n, linearly
    const double theta = theta_max * static_cast<double>(n - i + 1) / n;
    q[i - 1] = exp_so3(theta * kE2) * kE3;
  }
  return q;
}

ScenarioConfig default_scenario() {
  ScenarioConfig c;
  c.plant.m = 0.5;
  c.plant.J = Vec3(0.557e-2, 0.557e-2, 1.05e-2).asDiagonal();
  c.plant.link_mass.assign(5, 0.1);
  c.plant.link_length.assign(5, 0.1);
  c.plant.g = 9.81;

  c.controller.x_d = Vec3::Zero();
  c.controller.b1_d = kE1;
  c.controller.k_x = 12.8;
  c.controller.k_xdot = 4.22;
  c.controller.k_q = {11.01, 6.67, 1.97, 0.41, 0.069};
  c.controller.k_omega = {0.93, 0.24, 0.032, 0.030, 0.025};
  c.controller.kR_eff = 0.65;
  c.controller.kOmega_eff = 0.11;
  c.controller.omega_c_dt = c.integrator.dt;
  return c;
}

void ScenarioConfig::validate() const {
  plant.validate();
  integrator.validate();
  if (controller_enabled) controller.validate(plant.n());
  if (duration < 0.0) throw ValidationError("run: duration must be >= 0");
  if (output.decimation < 1) throw ValidationError("output: decimation must be >= 1");
  if (!initial.arc_theta_max.has_value()) {
    if (static_cast<int>(initial.q.size()) != plant.n()) {
      throw ValidationError("initial: expected " + std::to_string(plant.n()) +
                            " link directions, got " + std::to_string(initial.q.size()));
    }
    for (const auto& qi : initial.q) {
      if (qi.norm() < 1e-9) throw ValidationError("initial: zero link direction");
    }
  }
  if (!initial.omega.empty() &&
      static_cast<int>(initial.omega.size()) != plant.n()) {
    throw ValidationError("initial: expected " + std::to_string(plant.n()) +
                          " link angular velocities, got " +
                          std::to_string(initial.omega.size()));
  }
  if (!is_rotation(initial.R, 1e-6)) {
    throw ValidationError("initial: R is not a rotation matrix");
  }
  if (verify.c3.has_value() && !(*verify.c3 > 0.0)) {
    throw ValidationError("verify: c3 must be > 0");
  }
  if (!(verify.psi_R > 0.0) || !(verify.psi_R < 2.0)) {
    throw ValidationError("verify: psi_R must lie in (0, 2)");
  }
}

SystemState ScenarioConfig::initial_state() const {
  SystemState s;
  s.x = initial.x;
  s.v = initial.v;
  s.R = initial.R;
  s.Omega = initial.Omega;
  if (initial.arc_theta_max.has_value()) {
    s.q = horizontal_arc(plant.n(), *initial.arc_theta_max);
  } else {
    s.q = initial.q;
    for (auto& qi : s.q) qi.normalize();
  }
  s.omega = initial.omega.empty() ? std::vector<Vec3>(plant.n(), Vec3::Zero())
                                  : initial.omega;
  s.restore_constraints();
  s.validate();
  return s;
}

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line;
};

using Sections = std::map<std::string, std::vector<Entry>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + msg);
}

Sections tokenize(const std::string& text, const std::string& name) {
  Sections out;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(name, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(name, lineno, "empty section name");
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, lineno, "empty key");
    if (section.empty()) fail(name, lineno, "key '" + key + "' outside any section");
    out[section].push_back({key, value, lineno});
  }
  return out;
}

double parse_scalar(const Entry& e, const std::string& name) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    fail(name, e.line, "field '" + e.key + "': bad number '" + e.value + "'");
  }
  if (trim(e.value.substr(pos)) != "") {
    fail(name, e.line, "field '" + e.key + "': trailing characters in '" + e.value + "'");
  }
  return v;
}

std::vector<double> parse_vector(const Entry& e, const std::string& name) {
  std::istringstream is(e.value);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(name, e.line, "field '" + e.key + "': bad number '" + tok + "'");
    }
  }
  if (out.empty()) fail(name, e.line, "field '" + e.key + "': empty value");
  return out;
}

Vec3 parse_vec3(const Entry& e, const std::string& name) {
  const auto v = parse_vector(e, name);
  if (v.size() != 3) fail(name, e.line, "field '" + e.key + "' needs 3 components");
  return Vec3(v[0], v[1], v[2]);
}

bool parse_bool(const Entry& e, const std::string& name) {
  if (e.value == "true" || e.value == "1" || e.value == "on") return true;
  if (e.value == "false" || e.value == "0" || e.value == "off") return false;
  fail(name, e.line, "field '" + e.key + "': expected true/false");
}

std::vector<double> broadcast(const std::vector<double>& v, int n, const Entry& e,
                              const std::string& name) {
  if (static_cast<int>(v.size()) == n) return v;
  if (v.size() == 1) return std::vector<double>(n, v[0]);
  fail(name, e.line, "field '" + e.key + "' needs 1 or " + std::to_string(n) + " values");
}

int link_index(const Entry& e, const std::string& prefix, const std::string& name, int n) {
  int idx = 0;
  try {
    idx = std::stoi(e.key.substr(prefix.size()));
  } catch (const std::exception&) {
    fail(name, e.line, "unknown field '" + e.key + "'");
  }
  if (idx < 1 || idx > n) {
    fail(name, e.line, "field '" + e.key + "': link index out of range 1.." + std::to_string(n));
  }
  return idx - 1;
}

void apply_plant(ScenarioConfig& c, const std::vector<Entry>& es, const std::string& name) {
  // first pass: link count, so per-link vectors can broadcast
  for (const auto& e : es) {
    if (e.key == "links") {
      const int n = static_cast<int>(parse_scalar(e, name));
      if (n < 1) fail(name, e.line, "links must be >= 1");
      if (n != c.plant.n()) {
        c.plant.link_mass.assign(n, 0.1);
        c.plant.link_length.assign(n, 0.1);
        // the published per-link gains only exist for the 5-link setup
        c.controller.k_q.clear();
        c.controller.k_omega.clear();
      }
    }
  }
  const int n = c.plant.n();
  for (const auto& e : es) {
    if (e.key == "links") {
      continue;
    } else if (e.key == "mass") {
      c.plant.m = parse_scalar(e, name);
    } else if (e.key == "gravity") {
      c.plant.g = parse_scalar(e, name);
    } else if (e.key == "inertia") {
      const auto v = parse_vector(e, name);
      if (v.size() == 3) {
        c.plant.J = Vec3(v[0], v[1], v[2]).asDiagonal();
      } else if (v.size() == 9) {
        c.plant.J << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
      } else {
        fail(name, e.line, "inertia needs 3 (diagonal) or 9 (row-major) values");
      }
    } else if (e.key == "link_masses") {
      c.plant.link_mass = broadcast(parse_vector(e, name), n, e, name);
    } else if (e.key == "link_lengths") {
      c.plant.link_length = broadcast(parse_vector(e, name), n, e, name);
    } else {
      fail(name, e.line, "unknown field '[plant] " + e.key + "'");
    }
  }
}

void apply_integrator(ScenarioConfig& c, const std::vector<Entry>& es,
                      const std::string& name) {
  for (const auto& e : es) {
    if (e.key == "dt") {
      c.integrator.dt = parse_scalar(e, name);
    } else if (e.key == "scheme") {
      if (e.value == "rk4") {
        c.integrator.scheme = Scheme::kRK4Projected;
      } else if (e.value == "euler") {
        c.integrator.scheme = Scheme::kEulerProjected;
      } else {
        fail(name, e.line, "scheme must be 'rk4' or 'euler'");
      }
    } else if (e.key == "renormalize_every") {
      c.integrator.renormalize_every = static_cast<int>(parse_scalar(e, name));
    } else {
      fail(name, e.line, "unknown field '[integrator] " + e.key + "'");
    }
  }
}

void apply_controller(ScenarioConfig& c, const std::vector<Entry>& es,
                      const std::string& name) {
  const int n = c.plant.n();
  for (const auto& e : es) {
    if (e.key == "enabled") {
      c.controller_enabled = parse_bool(e, name);
    } else if (e.key == "x_d") {
      c.controller.x_d = parse_vec3(e, name);
    } else if (e.key == "b1_d") {
      c.controller.b1_d = parse_vec3(e, name).normalized();
    } else if (e.key == "k_x") {
      c.controller.k_x = parse_scalar(e, name);
    } else if (e.key == "k_xdot") {
      c.controller.k_xdot = parse_scalar(e, name);
    } else if (e.key == "k_q") {
      c.controller.k_q = broadcast(parse_vector(e, name), n, e, name);
    } else if (e.key == "k_omega") {
      c.controller.k_omega = broadcast(parse_vector(e, name), n, e, name);
    } else if (e.key == "k_R") {
      c.controller.kR_eff = parse_scalar(e, name);
    } else if (e.key == "k_Omega") {
      c.controller.kOmega_eff = parse_scalar(e, name);
    } else if (e.key == "omega_c_dt") {
      c.controller.omega_c_dt = parse_scalar(e, name);
    } else if (e.key == "omega_c_max") {
      c.controller.omega_c_max = parse_scalar(e, name);
    } else if (e.key == "omegadot_c_max") {
      c.controller.omegadot_c_max = parse_scalar(e, name);
    } else {
      fail(name, e.line, "unknown field '[controller] " + e.key + "'");
    }
  }
}

void apply_initial(ScenarioConfig& c, const std::vector<Entry>& es,
                   const std::string& name) {
  const int n = c.plant.n();
  for (const auto& e : es) {
    if (e.key == "x") {
      c.initial.x = parse_vec3(e, name);
    } else if (e.key == "xdot") {
      c.initial.v = parse_vec3(e, name);
    } else if (e.key == "Omega") {
      c.initial.Omega = parse_vec3(e, name);
    } else if (e.key == "R") {
      if (e.value == "identity") {
        c.initial.R = Mat3::Identity();
      } else {
        const auto v = parse_vector(e, name);
        if (v.size() != 9) fail(name, e.line, "R needs 'identity' or 9 row-major values");
        c.initial.R << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
      }
    } else if (e.key == "R_axis_angle") {
      const auto v = parse_vector(e, name);
      if (v.size() != 4) fail(name, e.line, "R_axis_angle needs axis (3) + angle (1)");
      Vec3 axis(v[0], v[1], v[2]);
      if (axis.norm() < 1e-12) fail(name, e.line, "R_axis_angle: zero axis");
      c.initial.R = exp_so3(axis.normalized() * v[3]);
    } else if (e.key == "links") {
      const std::string ha = "horizontal-arc(";
      if (e.value.rfind(ha, 0) == 0 && e.value.back() == ')') {
        const std::string arg = e.value.substr(ha.size(), e.value.size() - ha.size() - 1);
        try {
          c.initial.arc_theta_max = std::stod(arg);
        } catch (const std::exception&) {
          fail(name, e.line, "horizontal-arc: bad angle '" + arg + "'");
        }
      } else if (e.value == "explicit") {
        c.initial.arc_theta_max.reset();
      } else {
        fail(name, e.line, "links must be 'horizontal-arc(theta)' or 'explicit'");
      }
    } else if (e.key.rfind("q", 0) == 0 && e.key.size() > 1 && std::isdigit(e.key[1])) {
      const int idx = link_index(e, "q", name, n);
      c.initial.arc_theta_max.reset();
      c.initial.q.resize(std::max<std::size_t>(c.initial.q.size(), idx + 1), kE3);
      c.initial.q[idx] = parse_vec3(e, name);
    } else if (e.key.rfind("omega", 0) == 0 && e.key.size() > 5 && std::isdigit(e.key[5])) {
      const int idx = link_index(e, "omega", name, n);
      c.initial.omega.resize(std::max<std::size_t>(c.initial.omega.size(), idx + 1),
                             Vec3::Zero());
      c.initial.omega[idx] = parse_vec3(e, name);
    } else {
      fail(name, e.line, "unknown field '[initial] " + e.key + "'");
    }
  }
}

void apply_run(ScenarioConfig& c, const std::vector<Entry>& es, const std::string& name) {
  for (const auto& e : es) {
    if (e.key == "duration") {
      c.duration = parse_scalar(e, name);
    } else if (e.key == "decimation") {
      c.output.decimation = static_cast<int>(parse_scalar(e, name));
    } else {
      fail(name, e.line, "unknown field '[run] " + e.key + "'");
    }
  }
}

void apply_output(ScenarioConfig& c, const std::vector<Entry>& es, const std::string& name) {
  for (const auto& e : es) {
    if (e.key == "dir") {
      c.output.dir = e.value;
    } else if (e.key == "decimation") {
      c.output.decimation = static_cast<int>(parse_scalar(e, name));
    } else {
      fail(name, e.line, "unknown field '[output] " + e.key + "'");
    }
  }
}

void apply_verify(ScenarioConfig& c, const std::vector<Entry>& es, const std::string& name) {
  for (const auto& e : es) {
    if (e.key == "c3") {
      c.verify.c3 = parse_scalar(e, name);
    } else if (e.key == "psi_R") {
      c.verify.psi_R = parse_scalar(e, name);
    } else {
      fail(name, e.line, "unknown field '[verify] " + e.key + "'");
    }
  }
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& name) {
  const Sections sections = tokenize(text, name);
  ScenarioConfig c = default_scenario();

  bool omega_c_dt_given = false;
  for (const auto& [section, entries] : sections) {
    if (section == "controller") {
      for (const auto& e : entries) {
        if (e.key == "omega_c_dt") omega_c_dt_given = true;
      }
    }
  }

  static const char* kOrder[] = {"plant", "integrator", "controller",
                                 "initial", "run", "output", "verify"};
  for (const auto& [section, entries] : sections) {
    if (std::find_if(std::begin(kOrder), std::end(kOrder), [&](const char* s) {
          return section == s;
        }) == std::end(kOrder)) {
      fail(name, entries.empty() ? 0 : entries.front().line,
           "unknown section [" + section + "]");
    }
  }
  auto get = [&](const char* s) -> const std::vector<Entry>& {
    static const std::vector<Entry> empty;
    const auto it = sections.find(s);
    return it == sections.end() ? empty : it->second;
  };
  apply_plant(c, get("plant"), name);
  apply_integrator(c, get("integrator"), name);
  apply_controller(c, get("controller"), name);
  apply_initial(c, get("initial"), name);
  apply_run(c, get("run"), name);
  apply_output(c, get("output"), name);
  apply_verify(c, get("verify"), name);

  // the Omega_c finite difference runs at the control sampling interval
  if (!omega_c_dt_given) c.controller.omega_c_dt = c.integrator.dt;

  if (c.controller_enabled && c.controller.k_q.empty()) {
    throw ValidationError(
        "controller: k_q/k_omega have no defaults for n != 5; set them explicitly");
  }
  c.validate();
  return c;
}

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

}  // namespace slung
