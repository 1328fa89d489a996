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
#include <span>
#include <vector>

#include "dising/integrator.hpp"
#include "dising/operators.hpp"

namespace dising {

/// n_s = Re Tr(n_s rho). Throws NumericalError if a value leaves [0, 1]
/// by more than `tolerance`.
std::vector<double> site_populations(const Matrix& rho, const OperatorCache& cache,
                                     double tolerance = 1e-8);

struct SublatticeAverages {
  double odd = 0.0;
  double even = 0.0;
};

/// Means over one-based odd sites (indices 0, 2, ...) and even sites.
/// Throws ConfigError for odd N.
SublatticeAverages sublattice_averages(std::span<const double> populations);

/// Equally spaced sample times start, start + spacing, ... covering
/// [start, start + length).
struct VarianceWindow {
  double start = 300.0;
  double length = 100.0;
  double sample_interval = 0.1;

  void validate() const;
  std::size_t sample_count() const;
};

/// Trajectory sample indices selected by a window; throws ConfigError if
/// the window leaves the trajectory or is not commensurate with its sampling.
std::vector<std::size_t> window_indices(const Trajectory& trajectory, double start, double length,
                                        double spacing);

/// Population variance of a pooled multiset.
double pooled_variance(std::span<const double> values);

/// Variance of {n_j(t_i)} pooled over all sites and window samples.
double variance_D(const Trajectory& trajectory, const VarianceWindow& window);

/// <sigma^z_i sigma^z_j> - <sigma^z_i><sigma^z_j> for zero-based sites.
double connected_zz(const Matrix& rho, int n_sites, int i, int j);

/// C_r = (1/N) sum_i |<z_i z_{i+r}> - <z_i><z_{i+r}>|, periodic, 1 <= r <= N/2.
double correlation_function(const Matrix& rho, int n_sites, int r);

/// C_1 ... C_{N/2}.
std::vector<double> correlation_functions(const Matrix& rho, int n_sites);

/// Partial transpose over the sites whose bit is set in `site_mask`:
/// <a|rho^T_S|b> = <a'|rho|b'>, where a' and b' exchange the S-bits of a, b.
Matrix partial_transpose(const Matrix& rho, std::uint32_t site_mask, int n_sites);

/// Site mask of the one-based odd sites (bits 0, 2, 4, ...).
std::uint32_t odd_site_mask(int n_sites);
/// Site mask of the one-based even sites (bits 1, 3, 5, ...).
std::uint32_t even_site_mask(int n_sites);

struct NegativityResult {
  double value = 0.0;
  RealVector odd_eigenvalues;
  RealVector even_eigenvalues;
};

/// Sum of |negative eigenvalues| of rho^T_odd plus those of rho^T_even.
/// Eigenvalues with magnitude below `zero_threshold` are ignored.
NegativityResult negativity(const Matrix& rho, int n_sites, double zero_threshold = 1e-12);

}  // namespace dising
