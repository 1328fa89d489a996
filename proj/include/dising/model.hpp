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
#include <vector>

#include "dising/kernels.hpp"
#include "dising/operators.hpp"

namespace dising {

/// Site occupations m_s = <n_s> that enter the mean-field bond terms.
struct MeanFields {
  RealVector m;
};

/// m_s = Re Tr(n_s rho). Throws NumericalError if any Im Tr(n_s rho)
/// exceeds `imag_tolerance`, which only happens for a non-Hermitian state.
MeanFields mean_fields(const Matrix& rho, const OperatorCache& cache,
                       double imag_tolerance = 1e-10);

/// Diagonal of the interpolated Hamiltonian
///   H_eff = H0 + lambda V sum_i n_i n_{i+1}
///         + (1 - lambda) V sum_i (m_i n_{i+1} + n_i m_{i+1} - m_i m_{i+1}).
/// The only off-diagonal part of H_eff is (Omega/2) sum_s sigma^x_s.
void effective_hamiltonian_diagonal(const ChainParams& params, const OperatorCache& cache,
                                    const MeanFields& fields, RealVector& diagonal);

/// Dense H_eff (requires cache.has_dense()).
Matrix effective_hamiltonian(const ChainParams& params, const OperatorCache& cache,
                             const MeanFields& fields);

/// drho/dt = -i[H_eff(rho), rho] + gamma sum_s (s^-_s rho s^+_s - {n_s, rho}/2),
/// with the mean fields taken from `rho` itself. `rho` must be Hermitian;
/// the output is then exactly Hermitian.
Matrix lindblad_rhs(const Matrix& rho, const ChainParams& params, const OperatorCache& cache);

/// Same generator assembled from dense operator products. Valid for any
/// square input (Hermitian or not); slow, used as the reference path.
Matrix lindblad_rhs_reference(const Matrix& rho, const ChainParams& params,
                              const OperatorCache& cache);

/// Reusable evaluator for the hot loop. Holds scratch buffers, so one
/// instance must not be shared between threads.
class RhsEvaluator {
 public:
  RhsEvaluator(const ChainParams& params, const OperatorCache& cache,
               kernels::Isa isa = kernels::active_isa());

  /// out <- lindblad_rhs(rho).
  void operator()(const Matrix& rho, Matrix& out);

  const MeanFields& last_mean_fields() const { return fields_; }
  kernels::Isa isa() const { return isa_; }

  /// Diagnostic hook: flips the sign of the jump term so validation can
  /// demonstrate that trace conservation catches a broken dissipator.
  void inject_dissipator_sign_error(bool enabled) { sign_error_ = enabled; }

 private:
  ChainParams params_;
  const OperatorCache* cache_;
  kernels::Isa isa_;
  MeanFields fields_;
  RealVector static_diag_;
  RealVector h_diag_;
  Matrix scratch_;
  bool sign_error_ = false;
};

/// Probability distribution over bond subsets C (bit i of the mask set
/// means bond i is mean-field decoupled).
class PartitionDistribution {
 public:
  explicit PartitionDistribution(int n_bonds);

  static PartitionDistribution uniform(int n_bonds);
  static PartitionDistribution point(int n_bonds, std::uint32_t subset);
  /// Equal weight on the two alternating subsets {1,3,...} and {2,4,...}
  /// (in one-based bond labels). Requires even n_bonds.
  static PartitionDistribution alternating(int n_bonds);
  /// Independent decoupling of every bond with probability `p`.
  static PartitionDistribution bernoulli(int n_bonds, double p);

  int n_bonds() const { return n_bonds_; }
  double& operator[](std::uint32_t subset) { return prob_.at(subset); }
  double operator[](std::uint32_t subset) const { return prob_.at(subset); }

  /// Shift of every bond by one: i -> i + 1 mod n_bonds.
  std::uint32_t shifted(std::uint32_t subset) const;
  bool is_translation_invariant(double tol = 1e-14) const;
  bool is_normalized(double tol = 1e-12) const;

  /// sum_C P(C) xi_{i,C}: probability that bond i keeps its full interaction.
  double quantum_weight(int bond) const;

 private:
  int n_bonds_;
  std::vector<double> prob_;
};

/// Maximum chain length for the 2^N subset enumeration.
inline constexpr int kMaxEnsembleSites = 8;

/// sum_C P(C) H(C), enumerated subset by subset. Parameters come from the
/// cache. Throws ConfigError for non-normalized or non-translation-invariant
/// P, or N beyond kMaxEnsembleSites.
Matrix ensemble_hamiltonian(const PartitionDistribution& distribution, const OperatorCache& cache,
                            const MeanFields& fields);

}  // namespace dising
