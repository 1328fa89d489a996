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

#include "dising/params.hpp"
#include "dising/types.hpp"

namespace dising {

using Matrix2 = Eigen::Matrix2cd;

/// Single-qubit operators in the (|down>, |up>) ordering.
namespace qubit {
Matrix2 identity();
Matrix2 sigma_x();
Matrix2 sigma_y();
Matrix2 sigma_z();
/// Lowering operator |down><up|.
Matrix2 sigma_minus();
/// Number operator |up><up| = (sigma_z + 1) / 2.
Matrix2 number();
}  // namespace qubit

/// Embeds `op` on site `site` (zero-based) of an `n_sites` chain, acting as
/// the identity elsewhere. Element <b'|M|b> is nonzero only if b and b'
/// agree on every bit except `site`.
Matrix embed_single_site(const Matrix2& op, int site, int n_sites,
                         int max_sites = kMaxSites);

/// Bit test for the number operator: <b|n_s|b>.
inline int occupation_bit(std::size_t basis_state, int site) {
  return static_cast<int>((basis_state >> site) & 1u);
}

/// Precomputed many-body operators for one parameter set. Immutable after
/// construction and safe to share between threads.
///
/// Every operator diagonal in the computational basis is held as a real
/// vector; these are what the integrator kernels consume. Dense matrices are
/// materialized only up to `kDenseSiteLimit` sites (4^N memory each) and are
/// used by validators and tests.
class OperatorCache {
 public:
  static constexpr int kDenseSiteLimit = 8;

  explicit OperatorCache(const ChainParams& params);

  const ChainParams& params() const { return params_; }
  int n_sites() const { return params_.n_sites; }
  std::size_t dim() const { return dimension_for(params_.n_sites); }

  /// Diagonal of n_s.
  const RealVector& number_diagonal(int site) const { return number_diag_.at(site); }
  /// Diagonal of n_s n_{s+1 mod N}.
  const RealVector& bond_diagonal(int bond) const { return bond_diag_.at(bond); }
  /// Diagonal of sum_s n_s (popcount of the basis index).
  const RealVector& total_number_diagonal() const { return total_number_; }
  /// Diagonal part of H0, i.e. -Delta sum_s n_s.
  const RealVector& h0_diagonal() const { return h0_diag_; }
  /// Periodic bonds (s, s+1 mod N): N of them for N >= 2, none for a lone site.
  int n_bonds() const { return params_.n_sites >= 2 ? params_.n_sites : 0; }

  bool has_dense() const { return !sigma_x_.empty(); }
  const Matrix& sigma_x(int site) const { return dense(sigma_x_, site); }
  const Matrix& sigma_z(int site) const { return dense(sigma_z_, site); }
  const Matrix& sigma_minus(int site) const { return dense(sigma_minus_, site); }
  const Matrix& number(int site) const { return dense(number_, site); }
  const Matrix& bond(int bond) const { return dense(bond_, bond); }
  /// H0 = sum_s (-Delta n_s + Omega/2 sigma^x_s).
  const Matrix& h0() const;

 private:
  const Matrix& dense(const std::vector<Matrix>& ops, int index) const;

  ChainParams params_;
  std::vector<RealVector> number_diag_;
  std::vector<RealVector> bond_diag_;
  RealVector total_number_;
  RealVector h0_diag_;

  std::vector<Matrix> sigma_x_;
  std::vector<Matrix> sigma_z_;
  std::vector<Matrix> sigma_minus_;
  std::vector<Matrix> number_;
  std::vector<Matrix> bond_;
  Matrix h0_;
};

/// Validates `params` and precomputes the operator set.
OperatorCache build_cache(const ChainParams& params);

}  // namespace dising
