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
#include <limits>
#include <vector>

#include "dising/kernels.hpp"
#include "dising/model.hpp"

namespace dising {

/// Product initial state: site s (one-based j = s + 1) gets polar angle
///   theta_j = theta0 + (-1)^j stagger + random_amplitude * u_j,
/// with u_j uniform in [-1, 1] drawn from `seed` when random_amplitude > 0.
/// A single site gets no stagger.
struct InitialStateSpec {
  double theta0 = 0.0;
  double stagger = 1e-3;
  double random_amplitude = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

std::vector<double> site_angles(const InitialStateSpec& spec, int n_sites);

/// (x) cos(theta_j / 2)|down> + sin(theta_j / 2)|up>, as a density matrix.
Matrix initial_state(const InitialStateSpec& spec, int n_sites);

enum class Method { kRk4, kRk45 };

struct EvolveConfig {
  Method method = Method::kRk4;
  double dt = 0.005;
  double t_max = 500.0;
  double sample_interval = 0.05;
  /// Steps between rho <- (rho + rho^dagger)/2, rho <- rho / Tr rho.
  int hermitize_interval = 100;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double trace_tolerance = 1e-8;
  double hermiticity_tolerance = 1e-10;
  /// ||rhs||_F below which the final state counts as stationary.
  double steady_tolerance = 1e-8;
  /// Minimum-eigenvalue check every k-th sample (0 = final state only).
  int positivity_every = 0;
  /// If > 0, integration stops once ||rhs||_F falls below this (tested
  /// every 20 samples) and the remaining samples repeat the final state.
  double stop_residual = 0.0;

  void validate() const;
};

/// Running state-validity record for one integration.
struct StateDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_residual = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  std::size_t positivity_checks = 0;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
};

struct Trajectory {
  int n_sites = 0;
  double sample_interval = 0.0;
  std::vector<double> times;
  /// populations[k][s] = <n_s> at times[k].
  std::vector<std::vector<double>> populations;
  /// Sublattice means (one-based odd / even sites); empty for odd N.
  std::vector<double> n_odd;
  std::vector<double> n_even;
  Matrix final_state;
  /// ||rhs(final_state)||_F.
  double residual = 0.0;
  bool converged = false;
  StateDiagnostics diagnostics;
};

/// Integrates the nonlinear master equation from `rho0` over [0, t_max],
/// recording populations every sample_interval. Throws NumericalError on
/// trace or Hermiticity drift beyond tolerance or non-finite values.
Trajectory evolve(const Matrix& rho0, const ChainParams& params, const OperatorCache& cache,
                  const EvolveConfig& config, kernels::Isa isa = kernels::active_isa());

struct SteadyStateResult {
  Matrix rho;
  bool converged = false;
  double residual = 0.0;
  double time = 0.0;
  StateDiagnostics diagnostics;
};

/// Evolves until ||rhs(rho)||_F < tol_rhs (checked once per sample
/// interval) or t_max. Not converging is a normal outcome in the
/// limit-cycle regime.
SteadyStateResult find_steady_state(const Matrix& rho0, const ChainParams& params,
                                    const OperatorCache& cache, const EvolveConfig& config,
                                    double tol_rhs, double t_max,
                                    kernels::Isa isa = kernels::active_isa());

/// Column-major vectorized superoperator of the linear (lambda = 1)
/// generator: vec(rhs(rho)) = L vec(rho).
Matrix liouvillian(const ChainParams& params, const OperatorCache& cache);

inline constexpr int kMaxLiouvillianSites = 4;

/// Stationary state from the null space of the lambda = 1 Liouvillian.
/// Throws ConfigError if lambda != 1, SizeError beyond max_sites,
/// NumericalError if the null space is not one-dimensional.
Matrix liouvillian_steady_state(const ChainParams& params, const OperatorCache& cache,
                                int max_sites = kMaxLiouvillianSites);

/// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const Matrix& rho);

}  // namespace dising
