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

#include "dising/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace dising {

namespace {

bool result_invariant(const std::string& key) { return key == "jobs" || key == "output"; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json typed_value(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec == std::errc() && ptr == text.data() + text.size()) {
    long long i = 0;
    const auto [iptr, iec] = std::from_chars(text.data(), text.data() + text.size(), i);
    if (iec == std::errc() && iptr == text.data() + text.size()) return i;
    return x;
  }
  return text;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string version() { return DISING_VERSION; }

Json config_json(const RunConfig& config) {
  Json j = Json::object();
  for (const auto& [k, v] : config_entries(config)) {
    if (!result_invariant(k)) j[k] = typed_value(v);
  }
  return j;
}

void write_config_comments(std::ostream& out, const RunConfig& config) {
  out << "# dising " << version() << "\n";
  for (const auto& [k, v] : config_entries(config)) {
    if (!result_invariant(k)) out << "# " << k << " = " << v << "\n";
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const RunConfig& config) {
  write_config_comments(out, config);
  const bool sublattice = !trajectory.n_odd.empty();
  out << "t";
  for (int j = 1; j <= trajectory.n_sites; ++j) out << ",n_" << j;
  if (sublattice) out << ",n_odd,n_even";
  out << "\n";
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << num(trajectory.times[k]);
    for (double x : trajectory.populations[k]) out << "," << num(x);
    if (sublattice) out << "," << num(trajectory.n_odd[k]) << "," << num(trajectory.n_even[k]);
    out << "\n";
  }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum, const RunConfig& config) {
  write_config_comments(out, config);
  out << "f,amplitude,log_amplitude\n";
  for (std::size_t k = 0; k < spectrum.frequency.size(); ++k) {
    out << num(spectrum.frequency[k]) << "," << num(spectrum.amplitude[k]) << ","
        << num(spectrum.log_amplitude[k]) << "\n";
  }
}

Json label_json(const PhaseLabel& label) {
  Json peaks = Json::array();
  for (const Peak& p : label.peaks) {
    peaks.push_back({{"f", p.frequency}, {"amplitude", p.amplitude}, {"prominence", p.prominence}});
  }
  return {{"coarse", to_string(label.coarse)},
          {"fine", to_string(label.fine)},
          {"oscillation_amplitude", label.oscillation_amplitude},
          {"sublattice_gap", label.sublattice_gap},
          {"n_odd", label.mean_odd},
          {"n_even", label.mean_even},
          {"broadband_score", label.broadband_score},
          {"half_frequency", label.half_frequency},
          {"peaks", peaks}};
}

Json diagnostics_json(const StateDiagnostics& d) {
  return {{"max_trace_drift", d.max_trace_drift},
          {"max_hermiticity_residual", d.max_hermiticity_residual},
          {"min_eigenvalue", finite_or_null(d.min_eigenvalue)},
          {"positivity_checks", d.positivity_checks},
          {"steps", d.steps},
          {"rejected_steps", d.rejected_steps}};
}

Json cell_json(const CellRecord& cell, const Grid2D& grid) {
  Json j = {{"ix", cell.ix},
            {"iy", cell.iy},
            {"lambda", cell.params.lambda},
            {"delta", cell.params.delta},
            {"v", cell.params.v},
            {"seed", grid.cell_seed(cell.ix, cell.iy)}};
  if (!cell.ok()) {
    j["error"] = cell.error;
    return j;
  }
  j["D"] = cell.D;
  j["label"] = to_string(cell.label.coarse);
  j["fine_label"] = to_string(cell.label.fine);
  j["converged"] = cell.converged;
  j["residual"] = cell.residual;
  j["peak_f"] = cell.peak_frequency;
  j["peak_amp"] = cell.peak_amplitude;
  j["n_odd"] = cell.label.mean_odd;
  j["n_even"] = cell.label.mean_even;
  j["oscillation_amplitude"] = cell.label.oscillation_amplitude;
  j["broadband_score"] = cell.label.broadband_score;
  j["half_frequency"] = cell.label.half_frequency;
  if (!cell.correlations.empty()) j["correlations"] = cell.correlations;
  if (cell.negativity) j["negativity"] = *cell.negativity;
  j["diagnostics"] = diagnostics_json(cell.diagnostics);
  return j;
}

Json grid_json(const Grid2D& grid) {
  auto axis = [](const AxisRange& a) {
    return Json{{"axis", to_string(a.axis)},
                {"min", a.min},
                {"max", a.max},
                {"step", a.step},
                {"count", a.count()}};
  };
  return {{"x", axis(grid.x)},
          {"y", axis(grid.y)},
          {"seed", grid.seed},
          {"shared_seed", grid.shared_seed}};
}

Json sweep_json(const SweepResult& result, const RunConfig& config) {
  Json cells = Json::array();
  for (const CellRecord& c : result.cells) cells.push_back(cell_json(c, result.grid));
  return {{"grid", grid_json(result.grid)},
          {"cells", cells},
          {"meta", {{"version", version()}, {"config", config_json(config)}}}};
}

Json validation_json(const ValidationReport& report) {
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"residual", finite_or_null(c.residual)},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  return {{"version", version()}, {"passed", report.passed()}, {"checks", checks}};
}

void write_matrix_csv(std::ostream& out, const Grid2D& grid, const Field2D& field) {
  out << to_string(grid.y.axis) << "\\" << to_string(grid.x.axis);
  for (std::size_t ix = 0; ix < field.nx; ++ix) out << "," << num(grid.x.value(ix));
  out << "\n";
  for (std::size_t iy = 0; iy < field.ny; ++iy) {
    out << num(grid.y.value(iy));
    for (std::size_t ix = 0; ix < field.nx; ++ix) out << "," << num(field.at(ix, iy));
    out << "\n";
  }
}

void write_label_matrix_csv(std::ostream& out, const Grid2D& grid,
                            const std::vector<std::string>& labels) {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  out << to_string(grid.y.axis) << "\\" << to_string(grid.x.axis);
  for (std::size_t ix = 0; ix < nx; ++ix) out << "," << num(grid.x.value(ix));
  out << "\n";
  for (std::size_t iy = 0; iy < ny; ++iy) {
    out << num(grid.y.value(iy));
    for (std::size_t ix = 0; ix < nx; ++ix) out << "," << labels.at(iy * nx + ix);
    out << "\n";
  }
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

std::string output_path(const std::string& dir, const std::string& name) {
  const std::filesystem::path n(name);
  if (n.is_absolute() || dir.empty()) return n.string();
  return (std::filesystem::path(dir) / n).string();
}

}  // namespace dising
