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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dising {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Largest chain length accepted by operator construction.
inline constexpr int kMaxSites = 12;

/// Invalid parameters, configuration, or arguments.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested system is too large for dense representation.
class SizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Integration or linear-algebra failure (trace drift, NaN, corrupted state).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double time = -1.0)
      : std::runtime_error(what), time_(time) {}
  /// Simulation time at which the failure was detected, or -1 if not applicable.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

inline constexpr std::size_t dimension_for(int n_sites) {
  return std::size_t{1} << n_sites;
}

}  // namespace dising
