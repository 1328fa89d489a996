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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dising/kernels.hpp"
#include "dising/spectral.hpp"
#include "dising/sweep.hpp"

namespace dising {

/// Everything a command needs. Serializes to flat `key = value` text; a
/// persisted config reproduces its run exactly.
struct RunConfig {
  ChainParams params;
  InitialStateSpec initial;
  EvolveConfig evolve;
  VarianceWindow variance;
  SpectralWindow spectral;
  SignalSelector signal;
  bool taper = false;
  ClassifierConfig classifier;

  double steady_t_max = 2000.0;
  double steady_rhs_tolerance = 1e-8;

  /// Sweep axes and seeding; `params` and `initial.seed` supply the rest.
  Grid2D grid;
  int jobs = 1;
  double direction_x = 1.0;
  double direction_y = 0.0;
  bool steady_observables = false;
  bool export_matrices = false;

  std::string output = ".";
  std::string kernel = "auto";

  void validate() const;
  SweepConfig sweep_config() const;
  Grid2D sweep_grid() const;
  kernels::Isa isa() const;
};

struct ConfigKey {
  std::string name;
  std::string help;
};

/// Every accepted key in serialization order.
const std::vector<ConfigKey>& config_keys();

/// Sets one key from its text form. Throws ConfigError for unknown keys or
/// unparsable values.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// Text form of one key; round-trips through set_config_value.
std::string get_config_value(const RunConfig& config, std::string_view key);

/// Applies `key = value` lines; '#' starts a comment. Later lines win.
void apply_config_text(RunConfig& config, std::string_view text, const std::string& origin = "");
void apply_config_file(RunConfig& config, const std::string& path);

/// All keys with their effective values, in config_keys() order.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);
std::string format_config(const RunConfig& config);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
/// Decimal number or a multiple of pi: "pi", "-pi/2", "0.25*pi", "3pi/4".
double parse_angle(std::string_view text);

}  // namespace dising
