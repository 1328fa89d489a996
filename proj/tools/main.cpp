// Copyright 2026 The dising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dising: batch frontend. Exit codes: 0 ok, 1 I/O, 2 bad config,
// 3 numerical failure, 4 validation failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dising/config.hpp"
#include "dising/io.hpp"
#include "dising/observables.hpp"
#include "dising/validate.hpp"

namespace {

using namespace dising;

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> flags;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--config", opts.file, "key = value config file (flags override it)");
  for (const ConfigKey& k : config_keys()) {
    std::string flag = k.name;
    for (char& c : flag) {
      if (c == '_') c = '-';
    }
    cmd->add_option_function<std::string>(
        "--" + flag, [&opts, name = k.name](const std::string& v) { opts.flags[name] = v; },
        k.help);
  }
}

// default < DISING_OUTPUT_DIR < file < flags
RunConfig resolve(const ConfigOptions& opts) {
  RunConfig cfg;
  if (const char* env = std::getenv("DISING_OUTPUT_DIR"); env && *env) cfg.output = env;
  if (!opts.file.empty()) apply_config_file(cfg, opts.file);
  for (const ConfigKey& k : config_keys()) {
    if (auto it = opts.flags.find(k.name); it != opts.flags.end()) {
      set_config_value(cfg, k.name, it->second);
    }
  }
  cfg.validate();
  kernels::set_active_isa(cfg.isa());
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content) {
  const std::string path = output_path(cfg.output, name);
  write_file(path, content);
  std::cerr << "wrote " << path << "\n";
}

Json populations_json(const std::vector<double>& n) {
  Json j = {{"populations", n}};
  if (n.size() % 2 == 0) {
    const SublatticeAverages s = sublattice_averages(n);
    j["n_odd"] = s.odd;
    j["n_even"] = s.even;
  }
  return j;
}

Trajectory run_trajectory(const RunConfig& cfg) {
  const OperatorCache cache(cfg.params);
  return evolve(initial_state(cfg.initial, cfg.params.n_sites), cfg.params, cache, cfg.evolve);
}

int cmd_evolve(const RunConfig& cfg) {
  const Trajectory traj = run_trajectory(cfg);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, cfg);
  emit(cfg, "trajectory.csv", csv.str());

  Json summary = {{"version", version()}, {"config", config_json(cfg)}};
  summary["final"] = populations_json(traj.populations.back());
  summary["converged"] = traj.converged;
  summary["residual"] = traj.residual;
  if (cfg.params.n_sites % 2 == 0) {
    CellRecord rec;
    rec.params = cfg.params;
    try {
      analyze_trajectory(traj, cfg.sweep_config(), rec);
      summary["D"] = rec.D;
      summary["label"] = label_json(rec.label);
      summary["peak_f"] = rec.peak_frequency;
      summary["peak_amp"] = rec.peak_amplitude;
    } catch (const ConfigError& e) {
      std::cerr << "note: no phase analysis (" << e.what() << ")\n";
    }
  } else {
    try {
      summary["D"] = variance_D(traj, cfg.variance);
    } catch (const ConfigError& e) {
      std::cerr << "note: no variance (" << e.what() << ")\n";
    }
  }
  summary["diagnostics"] = diagnostics_json(traj.diagnostics);
  const std::string text = summary.dump(2) + "\n";
  emit(cfg, "summary.json", text);
  std::cout << text;
  return 0;
}

int cmd_steady(const RunConfig& cfg) {
  const OperatorCache cache(cfg.params);
  const SteadyStateResult ss =
      find_steady_state(initial_state(cfg.initial, cfg.params.n_sites), cfg.params, cache,
                        cfg.evolve, cfg.steady_rhs_tolerance, cfg.steady_t_max);
  const int n = cfg.params.n_sites;
  Json report = {{"version", version()}, {"config", config_json(cfg)}};
  report["converged"] = ss.converged;
  report["residual"] = ss.residual;
  report["time"] = ss.time;
  const Json pops = populations_json(site_populations(ss.rho, cache));
  for (const auto& [k, v] : pops.items()) report[k] = v;
  report["correlations"] = n >= 2 ? Json(correlation_functions(ss.rho, n)) : Json::array();
  const NegativityResult neg = negativity(ss.rho, n);
  auto list = [](const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  report["negativity"] = {{"value", neg.value},
                          {"odd_eigenvalues", list(neg.odd_eigenvalues)},
                          {"even_eigenvalues", list(neg.even_eigenvalues)}};
  report["min_eigenvalue"] = min_eigenvalue(ss.rho);
  report["diagnostics"] = diagnostics_json(ss.diagnostics);
  const std::string text = report.dump(2) + "\n";
  emit(cfg, "steady.json", text);
  std::cout << text;
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const Trajectory traj = run_trajectory(cfg);
  const Spectrum spec = fft_spectrum(traj, cfg.spectral, cfg.signal, cfg.taper);
  std::ostringstream csv;
  write_spectrum_csv(csv, spec, cfg);
  emit(cfg, "spectrum.csv", csv.str());

  double largest = 0.0;
  for (double a : spec.amplitude) largest = std::max(largest, a);
  Json peaks = Json::array();
  for (const Peak& p : dominant_peaks(spec, cfg.classifier.peak_prominence * largest)) {
    peaks.push_back({{"f", p.frequency}, {"amplitude", p.amplitude}, {"prominence", p.prominence}});
  }
  Json side = {{"version", version()}, {"config", config_json(cfg)}};
  side["signal"] = cfg.signal.name();
  side["resolution"] = spec.resolution();
  side["nyquist"] = spec.nyquist();
  side["signal_variance"] = spec.signal_variance;
  side["peaks"] = peaks;
  if (cfg.params.n_sites % 2 == 0) {
    const Spectrum even = fft_spectrum(traj, cfg.spectral);
    side["label"] = label_json(classify_phase(traj, even, cfg.classifier));
  }
  const std::string text = side.dump(2) + "\n";
  emit(cfg, "spectrum.json", text);
  std::cout << text;
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  const Grid2D grid = cfg.sweep_grid();
  grid.validate();
  std::cerr << "sweep: " << grid.nx() << " x " << grid.ny() << " cells, " << cfg.jobs
            << " worker(s)\n";
  const SweepResult result = run_sweep(grid, cfg.sweep_config());
  std::cerr << "sweep: done in " << result.wall_seconds << " s\n";
  emit(cfg, "sweep.json", sweep_json(result, cfg).dump(1) + "\n");

  std::size_t failed = 0;
  for (const CellRecord& c : result.cells) failed += c.ok() ? 0 : 1;
  Json analysis = {{"version", version()}, {"failed_cells", failed}};
  if (failed == 0) {
    const PhaseDiagram diagram = phase_diagram(result, cfg.direction_x, cfg.direction_y);
    Json pairs = Json::array();
    for (const BoundaryPair& p : diagram.boundaries.pairs) {
      pairs.push_back({{"ix0", p.ix0}, {"iy0", p.iy0}, {"ix1", p.ix1}, {"iy1", p.iy1},
                       {"jump", p.jump}});
    }
    analysis["direction"] = {diagram.direction_x, diagram.direction_y};
    analysis["threshold"] = diagram.boundaries.threshold;
    analysis["boundary_pairs"] = pairs;
    analysis["boundary_curves"] = diagram.boundaries.curves;
    analysis["label_agreement"] =
        diagram.boundaries.pairs.empty() ? Json(nullptr) : Json(boundary_label_agreement(diagram));
    if (cfg.export_matrices) {
      std::ostringstream d, dd, labels;
      write_matrix_csv(d, grid, diagram.D);
      write_matrix_csv(dd, grid, diagram.derivative);
      write_label_matrix_csv(labels, grid, diagram.labels);
      emit(cfg, "D.csv", d.str());
      emit(cfg, "dD.csv", dd.str());
      emit(cfg, "labels.csv", labels.str());
    }
  }
  if (grid.x.axis == Axis::kLambda) {
    Json rows = Json::array();
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
      Json row = {{"y", grid.y.value(iy)}};
      Json transitions = Json::array();
      for (const LabelTransition& t : row_transitions(result, iy)) {
        transitions.push_back({{"lambda", t.lambda}, {"from", to_string(t.from)},
                               {"to", to_string(t.to)}});
        std::cout << to_string(grid.y.axis) << "=" << grid.y.value(iy) << "  " << to_string(t.from)
                  << " -> " << to_string(t.to) << " at lambda=" << t.lambda << "\n";
      }
      row["transitions"] = transitions;
      rows.push_back(row);
    }
    if (failed == 0) {
      const auto bif = row_bifurcations(result);
      for (std::size_t iy = 0; iy < bif.size(); ++iy) {
        Json list = Json::array();
        for (const Bifurcation& b : bif[iy]) {
          list.push_back({{"lambda", b.lambda}, {"kind", to_string(b.kind)}});
          std::cout << to_string(grid.y.axis) << "=" << grid.y.value(iy) << "  "
                    << to_string(b.kind) << " at lambda=" << b.lambda << "\n";
        }
        rows[iy]["bifurcations"] = list;
      }
    }
    analysis["rows"] = rows;
  }
  emit(cfg, "phase_diagram.json", analysis.dump(2) + "\n");
  if (failed > 0) std::cerr << "sweep: " << failed << " cell(s) failed; see sweep.json\n";
  return 0;
}

int cmd_validate(bool mutate, const std::string& output) {
  ValidationOptions opts;
  opts.inject_dissipator_sign_error = mutate;
  const ValidationReport report = run_validation(opts);
  for (const CheckResult& c : report.checks) {
    std::printf("%-24s %s  residual %.3e  tol %.1e  %s\n", c.name.c_str(),
                c.passed ? "PASS" : "FAIL", c.residual, c.tolerance, c.detail.c_str());
  }
  if (!output.empty()) {
    const std::string path = output_path(output, "validate.json");
    write_file(path, validation_json(report).dump(2) + "\n");
    std::cerr << "wrote " << path << "\n";
  }
  return report.passed() ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative Ising chain with an interpolated mean-field coupling"};
  app.set_version_flag("--version", dising::version());
  app.require_subcommand(1);

  ConfigOptions evolve_opts, steady_opts, spectrum_opts, sweep_opts, config_opts;
  auto* evolve_cmd = app.add_subcommand("evolve", "integrate one trajectory; CSV + summary JSON");
  add_config_options(evolve_cmd, evolve_opts);
  auto* steady_cmd = app.add_subcommand("steady", "steady-state search with C_r and negativity");
  add_config_options(steady_cmd, steady_opts);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "FFT spectrum of a trajectory window");
  add_config_options(spectrum_cmd, spectrum_opts);
  auto* sweep_cmd = app.add_subcommand("sweep", "2D parameter sweep and phase diagram");
  add_config_options(sweep_cmd, sweep_opts);
  auto* config_cmd = app.add_subcommand("config", "print the effective configuration");
  add_config_options(config_cmd, config_opts);

  auto* validate_cmd = app.add_subcommand("validate", "run the oracle cross-checks");
  bool mutate = false;
  std::string validate_out;
  if (const char* env = std::getenv("DISING_OUTPUT_DIR"); env && *env) validate_out = env;
  validate_cmd->add_flag("--inject-dissipator-sign-error", mutate,
                         "break the jump term to exercise the checks");
  validate_cmd->add_option("--output", validate_out, "directory for validate.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*validate_cmd) return cmd_validate(mutate, validate_out);
    if (*evolve_cmd) return cmd_evolve(resolve(evolve_opts));
    if (*steady_cmd) return cmd_steady(resolve(steady_opts));
    if (*spectrum_cmd) return cmd_spectrum(resolve(spectrum_opts));
    if (*sweep_cmd) return cmd_sweep(resolve(sweep_opts));
    if (*config_cmd) {
      std::cout << format_config(resolve(config_opts));
      return 0;
    }
  } catch (const dising::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dising::NumericalError& e) {
    std::cerr << "numerical failure at t = " << e.time() << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const dising::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
