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

#include <cstdint>
#include <string>
#include <vector>

#include "dising/types.hpp"

namespace dising {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationOptions {
  /// Runs the suite against a generator whose jump term has the wrong sign.
  bool inject_dissipator_sign_error = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Oracle cross-checks: kernel variants, dense reference, trace and
/// Hermiticity conservation, lambda = 0 Bloch equations, lambda = 1
/// Liouvillian null space, partition-ensemble identity, partial transpose
/// and negativity known values, single-site analytic results.
ValidationReport run_validation(const ValidationOptions& options = {});

/// A A^dagger / Tr for complex Gaussian A.
Matrix random_density_matrix(int n_sites, std::uint64_t seed);

/// Single-site steady population (Omega^2/4) / (Delta^2 + gamma^2/4 + Omega^2/2).
double single_site_population(double delta, double omega, double gamma);

}  // namespace dising
