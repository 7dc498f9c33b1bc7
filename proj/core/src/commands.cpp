#include "slung/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "slung/chain_dynamics.hpp"
#include "slung/diagnostics.hpp"
#include "slung/errors.hpp"
#include "slung/linear_model.hpp"
#include "slung/oracles.hpp"

namespace slung {

namespace {

namespace fs = std::filesystem;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  os << text;
}

void write_panel(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << "\n";
  }
}

const char* kGnuplotScript = R"(# gnuplot script for the simulate panels
set datafile separator ","
set terminal pngcairo size 1200,900
set output "panels.png"
set multiplot layout 2,2
set key autotitle columnhead
set xlabel "t [s]"
plot "plot_position.csv" using 1:2 with lines, "" using 1:3 with lines, \
     "" using 1:4 with lines, "" using 1:5 with lines dt 2, \
     "" using 1:6 with lines dt 2, "" using 1:7 with lines dt 2
plot "plot_link_errors.csv" using 1:2 with lines, "" using 1:3 with lines
plot "plot_attitude_rate.csv" using 1:2 with lines, "" using 1:3 with lines, \
     "" using 1:4 with lines, "" using 1:5 with lines dt 2, \
     "" using 1:6 with lines dt 2, "" using 1:7 with lines dt 2
plot "plot_control.csv" using 1:2 with lines, "" using 1:3 with lines, \
     "" using 1:4 with lines, "" using 1:5 with lines
unset multiplot
)";

}  // namespace

SimulateResult cmd_simulate(const ScenarioConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  const PlantParams& p = cfg.plant;
  const InertiaTable table = build_inertia_table(p);
  const SystemState s0 = cfg.initial_state();

  ControlFn control;
  if (cfg.controller_enabled) {
    control = GeometricController(p, table, cfg.controller);
  } else {
    control = [](const SystemState&, double) { return ControlSample{}; };
  }

  SimulateResult res;
  res.log = simulate(p, table, s0, control, cfg.integrator, cfg.duration,
                     cfg.output.decimation);

  const TrajectorySample& first = res.log.samples.front();
  const TrajectorySample& last = res.log.samples.back();
  res.final_position_error = (last.state.x - cfg.controller.x_d).norm();
  res.final_e_q = last.e_q;
  res.final_e_omega = last.e_omega;
  res.f_min = res.f_max = first.u.f;
  for (const auto& s : res.log.samples) {
    res.f_min = std::min(res.f_min, s.u.f);
    res.f_max = std::max(res.f_max, s.u.f);
  }
  res.energy_drift_rel =
      std::abs(last.energy - first.energy) / std::max(1.0, std::abs(first.energy));

  fs::create_directories(out_dir);
  write_csv(res.log, (fs::path(out_dir) / "trajectory.csv").string());

  {
    std::ostringstream ss;
    ss << "samples: " << res.log.samples.size() << "\n"
       << "final_position_error_m: " << format_double(res.final_position_error) << "\n"
       << "final_e_q: " << format_double(res.final_e_q) << "\n"
       << "final_e_omega: " << format_double(res.final_e_omega) << "\n"
       << "f_min_N: " << format_double(res.f_min) << "\n"
       << "f_max_N: " << format_double(res.f_max) << "\n"
       << "energy_drift_rel: " << format_double(res.energy_drift_rel) << "\n";
    write_text((fs::path(out_dir) / "summary.txt").string(), ss.str());
  }

  std::vector<std::vector<double>> pos, err, rate, ctl;
  for (const auto& s : res.log.samples) {
    pos.push_back({s.t, s.state.x[0], s.state.x[1], s.state.x[2], cfg.controller.x_d[0],
                   cfg.controller.x_d[1], cfg.controller.x_d[2]});
    err.push_back({s.t, s.e_q, s.e_omega});
    rate.push_back({s.t, s.state.Omega[0], s.state.Omega[1], s.state.Omega[2],
                    s.Omega_c[0], s.Omega_c[1], s.Omega_c[2]});
    ctl.push_back({s.t, s.u.f, s.u.M[0], s.u.M[1], s.u.M[2]});
  }
  const fs::path dir(out_dir);
  write_panel((dir / "plot_position.csv").string(),
              {"t", "x1", "x2", "x3", "xd1", "xd2", "xd3"}, pos);
  write_panel((dir / "plot_link_errors.csv").string(), {"t", "e_q", "e_w"}, err);
  write_panel((dir / "plot_attitude_rate.csv").string(),
              {"t", "W1", "W2", "W3", "Wc1", "Wc2", "Wc3"}, rate);
  write_panel((dir / "plot_control.csv").string(), {"t", "f", "M1", "M2", "M3"}, ctl);
  write_text((dir / "plots.gp").string(), kGnuplotScript);
  return res;
}

int cmd_linearize(const ScenarioConfig& cfg, const std::string& out_dir) {
  cfg.plant.validate();
  const LinearModel lm = build_linear_model(cfg.plant);
  const int rank = controllability_rank(lm);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_matrix_csv(lm.M, (dir / "linear_M.csv").string());
  write_matrix_csv(lm.G, (dir / "linear_G.csv").string());
  write_matrix_csv(lm.B, (dir / "linear_B.csv").string());
  std::ostringstream ss;
  const int d = 2 * lm.dim();
  ss << "state_dim: " << lm.dim() << "\n"
     << "first_order_dim: " << d << "\n"
     << "controllability_rank: " << rank << "\n"
     << "full_rank: " << (rank == d ? "yes" : "no") << "\n";
  write_text((dir / "linearize_summary.txt").string(), ss.str());
  return rank;
}

namespace {

SystemState random_state(const PlantParams& p, std::mt19937_64& rng, bool away_from_poles) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto rand_vec = [&](auto& dist) { return Vec3(dist(rng), dist(rng), dist(rng)); };
  SystemState s;
  s.x = rand_vec(uni);
  s.v = rand_vec(uni);
  s.R = exp_so3(rand_vec(gauss));
  s.Omega = rand_vec(uni);
  s.q.resize(p.n());
  s.omega.resize(p.n());
  for (int i = 0; i < p.n(); ++i) {
    Vec3 q = rand_vec(gauss).normalized();
    while (q.norm() < 1e-6 || (away_from_poles && std::abs(q.z()) > 0.85)) {
      q = rand_vec(gauss).normalized();
    }
    s.q[i] = q;
    s.omega[i] = project_tangent(q, rand_vec(uni));
  }
  return s;
}

struct CheckContext {
  const ScenarioConfig& cfg;
  std::mt19937_64 rng;
};

VerifyCheck check_energy_momentum(CheckContext& ctx, bool momentum_part) {
  const PlantParams& p = ctx.cfg.plant;
  const InertiaTable t = build_inertia_table(p);
  SystemState s;
  s.q = horizontal_arc(p.n(), 1.5707963267948966);
  s.omega.resize(p.n());
  // free fall from rest is swing-free, so spin the links and the body to
  // exercise the coupled dynamics
  for (int i = 0; i < p.n(); ++i) {
    s.omega[i] = project_tangent(s.q[i], Vec3(0.4, 1.0 + 0.3 * i, -0.2));
  }
  s.v = Vec3(0.3, -0.2, 0.1);
  s.Omega = Vec3(2.0, -1.0, 3.0);
  const double duration = 5.0;
  const auto free_flight = [](const SystemState&, double) { return ControlSample{}; };
  const TrajectoryLog log =
      simulate(p, t, s, free_flight, ctx.cfg.integrator, duration,
               std::max(1, static_cast<int>(std::floor(duration / ctx.cfg.integrator.dt))));
  const auto& first = log.samples.front();
  const auto& last = log.samples.back();
  const double T = last.t;
  VerifyCheck c;
  if (!momentum_part) {
    c.name = "energy_conservation";
    const double drift =
        std::abs(last.energy - first.energy) / std::max(1.0, std::abs(first.energy));
    c.passed = drift <= 1e-6;
    std::ostringstream ss;
    ss << "relative drift " << drift << " (tol 1e-6, dt " << ctx.cfg.integrator.dt << ")";
    c.detail = ss.str();
  } else {
    c.name = "momentum_law";
    const double h1 = std::abs(last.momentum[0] - first.momentum[0]);
    const double h2 = std::abs(last.momentum[1] - first.momentum[1]);
    const double v3 = std::abs(last.momentum[2] - first.momentum[2] - t.M00 * p.g * T);
    c.passed = h1 <= 1e-8 && h2 <= 1e-8 && v3 <= 1e-6;
    std::ostringstream ss;
    ss << "horizontal drift (" << h1 << ", " << h2 << ") tol 1e-8; vertical residual "
       << v3 << " tol 1e-6";
    c.detail = ss.str();
  }
  return c;
}

VerifyCheck check_cross_form(CheckContext& ctx) {
  const PlantParams& p = ctx.cfg.plant;
  const InertiaTable t = build_inertia_table(p);
  std::uniform_real_distribution<double> uf(0.0, 20.0);
  std::uniform_real_distribution<double> um(-1.0, 1.0);
  double worst_x = 0.0, worst_q = 0.0;
  for (int k = 0; k < 100; ++k) {
    const SystemState s = random_state(p, ctx.rng, false);
    ControlInput u;
    u.f = uf(ctx.rng);
    u.M = Vec3(um(ctx.rng), um(ctx.rng), um(ctx.rng));
    const Accelerations acc = accelerations(p, t, s, u);
    const auto [xdd2, qdd2] = qddot_form_accelerations(t, s, u, p.g);
    worst_x = std::max(worst_x, (acc.xddot - xdd2).norm());
    for (int i = 0; i < p.n(); ++i) {
      const Vec3 qdd_rec =
          -hat(s.q[i]) * acc.omegadot[i] - s.omega[i].squaredNorm() * s.q[i];
      worst_q = std::max(worst_q, (qdd_rec - qdd2[i]).norm());
    }
  }
  VerifyCheck c;
  c.name = "cross_form_equivalence";
  c.passed = worst_x <= 1e-10 && worst_q <= 1e-10;
  std::ostringstream ss;
  ss << "worst xddot diff " << worst_x << ", worst qddot diff " << worst_q
     << " over 100 states (tol 1e-10)";
  c.detail = ss.str();
  return c;
}

VerifyCheck check_pendulum_oracle(CheckContext& ctx) {
  PlantParams p1 = ctx.cfg.plant;
  p1.link_mass = {ctx.cfg.plant.link_mass[0]};
  p1.link_length = {ctx.cfg.plant.link_length[0]};
  const InertiaTable t1 = build_inertia_table(p1);
  std::uniform_real_distribution<double> uf(0.0, 15.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const SystemState s = random_state(p1, ctx.rng, true);
    const double f = uf(ctx.rng);
    const auto [xdd_o, wdot_o] = pendulum_oracle_accelerations(p1, s, f);
    const Accelerations acc = accelerations(p1, t1, s, ControlInput{f, Vec3::Zero()});
    worst = std::max({worst, (acc.xddot - xdd_o).norm(),
                      (acc.omegadot[0] - wdot_o).norm()});
  }
  VerifyCheck c;
  c.name = "pendulum_oracle";
  c.passed = worst <= 1e-8;
  std::ostringstream ss;
  ss << "worst acceleration diff " << worst << " over 50 states (tol 1e-8)";
  c.detail = ss.str();
  return c;
}

VerifyCheck check_linearization_slope(CheckContext& ctx) {
  const PlantParams& p = ctx.cfg.plant;
  const InertiaTable t = build_inertia_table(p);
  const LinearModel lm = build_linear_model(p);
  const int n = p.n();
  const int dim = 3 + 2 * n;

  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto unit2 = [&] {
    Eigen::Vector2d v(uni(ctx.rng), uni(ctx.rng));
    while (v.norm() < 1e-3) v = Eigen::Vector2d(uni(ctx.rng), uni(ctx.rng));
    return (v / v.norm()).eval();
  };
  auto unit3 = [&] {
    Vec3 v(uni(ctx.rng), uni(ctx.rng), uni(ctx.rng));
    while (v.norm() < 1e-3) v = Vec3(uni(ctx.rng), uni(ctx.rng), uni(ctx.rng));
    return (v / v.norm()).eval();
  };
  const Vec3 dx = unit3(), dv = unit3(), du = unit3();
  std::vector<Eigen::Vector2d> xi(n), dw(n);
  for (int i = 0; i < n; ++i) {
    xi[i] = unit2();
    dw[i] = unit2();
  }

  const double hs[3] = {1e-2, 1e-3, 1e-4};
  double res[3];
  for (int m = 0; m < 3; ++m) {
    const double h = hs[m];
    SystemState s;
    s.x = h * dx;
    s.v = h * dv;
    s.q.resize(n);
    s.omega.resize(n);
    for (int i = 0; i < n; ++i) {
      const Vec3 xi3(xi[i][0], xi[i][1], 0.0);
      const Mat3 rot = exp_so3(h * xi3);
      s.q[i] = rot * kE3;
      s.omega[i] = rot * Vec3(h * dw[i][0], h * dw[i][1], 0.0);
    }
    const Vec3 force = -t.M00 * p.g * kE3 + h * du;
    const Accelerations acc = accelerations_force(p, t, s, force);

    LinearState ls;
    ls.pos.resize(dim);
    ls.vel = Eigen::VectorXd::Zero(dim);
    ls.pos.head<3>() = h * dx;
    for (int i = 0; i < n; ++i) ls.pos.segment<2>(3 + 2 * i) = h * xi[i];
    const Eigen::VectorXd lin = linear_accelerations(lm, ls, h * du);

    Eigen::VectorXd nl(dim);
    nl.head<3>() = acc.xddot;
    for (int i = 0; i < n; ++i) nl.segment<2>(3 + 2 * i) = acc.omegadot[i].head<2>();
    res[m] = (nl - lin).norm();
  }
  const double s1 = std::log10(res[0] / res[1]);
  const double s2 = std::log10(res[1] / res[2]);
  VerifyCheck c;
  c.name = "linearization_slope";
  c.passed = s1 >= 1.9 && s2 >= 1.9;
  std::ostringstream ss;
  ss << "residuals (" << res[0] << ", " << res[1] << ", " << res[2] << "), slopes ("
     << s1 << ", " << s2 << ") tol >= 1.9";
  c.detail = ss.str();
  return c;
}

VerifyCheck check_lyapunov(CheckContext& ctx) {
  const ScenarioConfig& cfg = ctx.cfg;
  VerifyCheck c;
  c.name = "lyapunov_certificates";
  try {
    const double bound =
        c3_bound(cfg.controller.kR_eff, cfg.controller.kOmega_eff, cfg.plant.J);
    const double c3 = cfg.verify.c3.value_or(0.5 * bound);
    const LyapunovReport rep = lyapunov_matrices(
        cfg.controller.kR_eff, cfg.controller.kOmega_eff, cfg.plant.J, c3, cfg.verify.psi_R);
    c.passed = bound > 0.0 && rep.all_positive_definite();
    std::ostringstream ss;
    ss << "c3 bound " << bound << ", c3 " << c3 << ", min eigs (L1 " << rep.min_eig_L1
       << ", L2 " << rep.min_eig_L2 << ", U " << rep.min_eig_U << ")";
    c.detail = ss.str();
  } catch (const C3TooLargeError& e) {
    c.passed = false;
    c.detail = e.what();
  }
  return c;
}

}  // namespace

int cmd_verify(const ScenarioConfig& cfg, unsigned long seed, std::ostream& os,
               std::vector<VerifyCheck>* results) {
  cfg.validate();
  CheckContext ctx{cfg, std::mt19937_64(seed)};
  std::vector<VerifyCheck> checks;
  checks.push_back(check_energy_momentum(ctx, false));
  checks.push_back(check_energy_momentum(ctx, true));
  checks.push_back(check_cross_form(ctx));
  checks.push_back(check_pendulum_oracle(ctx));
  checks.push_back(check_linearization_slope(ctx));
  checks.push_back(check_lyapunov(ctx));

  bool all = true;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS" : "FAIL") << " " << c.name << ": " << c.detail << "\n";
    all = all && c.passed;
  }
  os << (all ? "verify: all checks passed" : "verify: FAILURES present") << "\n";
  if (results) *results = checks;
  return all ? 0 : 1;
}

}  // namespace slung
