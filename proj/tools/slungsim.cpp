// Command-line front end: simulate / linearize / verify on scenario files.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "slung/commands.hpp"
#include "slung/errors.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::vector<std::string> configs;
  std::string out_dir = "out";
  double duration = -1.0;  // <0: keep scenario value
  double dt = -1.0;
  unsigned long seed = 0;
  bool sweep = false;
};

slung::ScenarioConfig load(const CommonOpts& opts, const std::string& path) {
  slung::ScenarioConfig cfg =
      path.empty() ? slung::default_scenario() : slung::parse_scenario(path);
  if (opts.duration >= 0.0) cfg.duration = opts.duration;
  if (opts.dt > 0.0) {
    cfg.integrator.dt = opts.dt;
    cfg.controller.omega_c_dt = opts.dt;
  }
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool overrides, bool sweep) {
  cmd->add_option("--config", opts.configs, "scenario file(s); none = built-in defaults");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "seed for randomized property checks");
  if (overrides) {
    cmd->add_option("--duration", opts.duration, "override run duration [s]");
    cmd->add_option("--dt", opts.dt, "override integrator step [s]");
  }
  if (sweep) {
    cmd->add_flag("--sweep", opts.sweep, "run all configs concurrently");
  }
}

int run_simulate(const CommonOpts& opts) {
  std::vector<std::string> configs = opts.configs;
  if (configs.empty()) configs.push_back("");
  if (!opts.sweep && configs.size() > 1) {
    std::cerr << "simulate: multiple configs need --sweep\n";
    return 2;
  }
  if (configs.size() == 1) {
    const auto res = cmd_simulate(load(opts, configs[0]), opts.out_dir);
    std::cout << "wrote " << opts.out_dir << "/trajectory.csv ("
              << res.log.samples.size() << " samples)\n"
              << "final |x - x_d| = " << res.final_position_error
              << " m, e_q = " << res.final_e_q << ", e_w = " << res.final_e_omega
              << ", f in [" << res.f_min << ", " << res.f_max << "] N\n";
    return 0;
  }
  // sweep: isolated per-config output directories, independent threads
  std::vector<fs::path> subdirs;
  for (const auto& c : configs) {
    const fs::path sub = fs::path(opts.out_dir) / fs::path(c).stem();
    if (std::find(subdirs.begin(), subdirs.end(), sub) != subdirs.end()) {
      std::cerr << "sweep: configs must have distinct file stems (" << sub << ")\n";
      return 2;
    }
    subdirs.push_back(sub);
  }
  std::vector<std::thread> workers;
  std::vector<int> status(configs.size(), 0);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        cmd_simulate(load(opts, configs[i]), subdirs[i].string());
      } catch (const std::exception& e) {
        std::cerr << configs[i] << ": " << e.what() << "\n";
        status[i] = 1;
      }
    });
  }
  for (auto& w : workers) w.join();
  for (int s : status) {
    if (s != 0) return 1;
  }
  std::cout << "sweep: " << configs.size() << " scenarios written under "
            << opts.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadrotor with cable-suspended payload: simulation and analysis"};
  app.require_subcommand(1);

  CommonOpts sim_opts, lin_opts, ver_opts;
  CLI::App* sim = app.add_subcommand("simulate", "integrate a scenario and write CSV logs");
  add_common(sim, sim_opts, true, true);
  CLI::App* lin = app.add_subcommand("linearize", "emit the linearized model and its controllability rank");
  add_common(lin, lin_opts, false, false);
  CLI::App* ver = app.add_subcommand("verify", "run the numerical property suite");
  add_common(ver, ver_opts, true, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate(sim_opts);
    if (lin->parsed()) {
      const std::string path = lin_opts.configs.empty() ? "" : lin_opts.configs.front();
      const int rank = cmd_linearize(load(lin_opts, path), lin_opts.out_dir);
      std::cout << "controllability rank: " << rank << " (files under "
                << lin_opts.out_dir << ")\n";
      return 0;
    }
    if (ver->parsed()) {
      const std::string path = ver_opts.configs.empty() ? "" : ver_opts.configs.front();
      return slung::cmd_verify(load(ver_opts, path), ver_opts.seed, std::cout);
    }
  } catch (const slung::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const slung::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
