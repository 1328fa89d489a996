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

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dising/config.hpp"
#include "dising/spectral.hpp"
#include "dising/sweep.hpp"
#include "dising/validate.hpp"

namespace dising {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string version();

/// Effective configuration as a JSON object, typed where the value parses
/// as a number or boolean. Keys that cannot change results (jobs, output)
/// are left out so outputs do not depend on them.
Json config_json(const RunConfig& config);

/// "# dising <version>" followed by "# key = value" for the same keys.
void write_config_comments(std::ostream& out, const RunConfig& config);

/// t,n_1..n_N[,n_odd,n_even]; one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const RunConfig& config);

/// f,amplitude,log_amplitude.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum, const RunConfig& config);

Json label_json(const PhaseLabel& label);
Json diagnostics_json(const StateDiagnostics& diagnostics);
Json cell_json(const CellRecord& cell, const Grid2D& grid);
Json grid_json(const Grid2D& grid);
Json sweep_json(const SweepResult& result, const RunConfig& config);
Json validation_json(const ValidationReport& report);

/// Row per y value, column per x value, with a leading header row of x
/// values and a leading column of y values.
void write_matrix_csv(std::ostream& out, const Grid2D& grid, const Field2D& field);
void write_label_matrix_csv(std::ostream& out, const Grid2D& grid,
                            const std::vector<std::string>& labels);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_file(const std::string& path, const std::string& content);
/// `name` inside `dir` (or `name` itself when it is absolute).
std::string output_path(const std::string& dir, const std::string& name);

}  // namespace dising
