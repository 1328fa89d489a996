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

#include <vector>

#include "dising/integrator.hpp"
#include "dising/params.hpp"

namespace dising {

/// Per-site Bloch vectors (<sigma^x>, <sigma^y>, <sigma^z>), one column per site.
struct BlochState {
  Eigen::Matrix3Xd s;

  int n_sites() const { return static_cast<int>(s.cols()); }
  /// m_j = (s^z_j + 1) / 2.
  double population(int site) const { return 0.5 * (s(2, site) + 1.0); }
};

/// Product state matching initial_state(spec, N): s_j = (sin theta_j, 0, -cos theta_j).
BlochState bloch_initial_state(const InitialStateSpec& spec, int n_sites);

/// Mean-field (lambda = 0) equations of motion. Each site follows the
/// single-qubit Lindblad equation for H_j = -delta_j n_j + (Omega/2) sigma^x_j
/// with delta_j = Delta - V (m_{j-1} + m_{j+1}) (periodic neighbours) and
/// decay L = sigma^- at rate gamma:
///   ds^x/dt =  delta_j s^y - (gamma/2) s^x
///   ds^y/dt = -delta_j s^x - Omega s^z - (gamma/2) s^y
///   ds^z/dt =  Omega s^y - gamma (s^z + 1)
/// params.lambda is ignored.
BlochState bloch_rhs(const BlochState& state, const ChainParams& params);

struct BlochRun {
  /// Same sampling and sublattice fields as the density-matrix trajectory;
  /// final_state is left empty.
  Trajectory trajectory;
  BlochState final_state;
  /// Largest |s_j| seen at a sample.
  double max_bloch_norm = 0.0;
};

/// Integrates the 3N-dimensional system with the EvolveConfig method and
/// sampling. Throws NumericalError on non-finite values.
BlochRun evolve_bloch(const BlochState& initial, const ChainParams& params,
                      const EvolveConfig& config);

}  // namespace dising
