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

#include "dising/operators.hpp"

#include <bit>
#include <string>

namespace dising {

namespace qubit {

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 sigma_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2 sigma_y() {
  // sigma^y = i (sigma^- - sigma^+), so [s^x, s^y] = 2i s^z with up = +1.
  Matrix2 m;
  m << 0, Complex(0, 1), Complex(0, -1), 0;
  return m;
}

Matrix2 sigma_z() {
  Matrix2 m;
  m << -1, 0, 0, 1;
  return m;
}

Matrix2 sigma_minus() {
  Matrix2 m;
  m << 0, 1, 0, 0;
  return m;
}

Matrix2 number() {
  Matrix2 m;
  m << 0, 0, 0, 1;
  return m;
}

}  // namespace qubit

Matrix embed_single_site(const Matrix2& op, int site, int n_sites, int max_sites) {
  if (n_sites < 1) throw ConfigError("n_sites must be >= 1");
  if (n_sites > max_sites) {
    throw SizeError("n_sites = " + std::to_string(n_sites) + " exceeds maximum " +
                    std::to_string(max_sites));
  }
  if (site < 0 || site >= n_sites) {
    throw ConfigError("site index " + std::to_string(site) + " out of range for N = " +
                      std::to_string(n_sites));
  }
  const std::size_t d = dimension_for(n_sites);
  const std::size_t mask = std::size_t{1} << site;
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    const int in_bit = occupation_bit(col, site);
    for (int out_bit = 0; out_bit < 2; ++out_bit) {
      const Complex value = op(out_bit, in_bit);
      if (value == Complex{}) continue;
      const std::size_t row = out_bit ? (col | mask) : (col & ~mask);
      out(row, col) = value;
    }
  }
  return out;
}

OperatorCache::OperatorCache(const ChainParams& params) : params_(params) {
  params_.validate_allow_odd();
  const int n = params_.n_sites;
  const std::size_t d = dim();

  total_number_ = RealVector::Zero(d);
  number_diag_.assign(n, RealVector::Zero(d));
  for (std::size_t b = 0; b < d; ++b) {
    total_number_[b] = std::popcount(b);
    for (int s = 0; s < n; ++s) number_diag_[s][b] = occupation_bit(b, s);
  }
  for (int i = 0; i < n_bonds(); ++i) {
    bond_diag_.push_back(number_diag_[i].cwiseProduct(number_diag_[(i + 1) % n]));
  }
  h0_diag_ = -params_.delta * total_number_;

  if (n > kDenseSiteLimit) return;
  h0_ = Matrix::Zero(d, d);
  for (int s = 0; s < n; ++s) {
    sigma_x_.push_back(embed_single_site(qubit::sigma_x(), s, n));
    sigma_z_.push_back(embed_single_site(qubit::sigma_z(), s, n));
    sigma_minus_.push_back(embed_single_site(qubit::sigma_minus(), s, n));
    number_.push_back(embed_single_site(qubit::number(), s, n));
    h0_ += -params_.delta * number_.back() + 0.5 * params_.omega * sigma_x_.back();
  }
  for (int i = 0; i < n_bonds(); ++i) bond_.push_back(number_[i] * number_[(i + 1) % n]);
}

const Matrix& OperatorCache::dense(const std::vector<Matrix>& ops, int index) const {
  if (!has_dense()) {
    throw SizeError("dense operators are only materialized for N <= " +
                    std::to_string(kDenseSiteLimit));
  }
  return ops.at(index);
}

const Matrix& OperatorCache::h0() const {
  if (!has_dense()) {
    throw SizeError("dense operators are only materialized for N <= " +
                    std::to_string(kDenseSiteLimit));
  }
  return h0_;
}

OperatorCache build_cache(const ChainParams& params) { return OperatorCache(params); }

}  // namespace dising
