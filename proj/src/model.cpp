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

#include "dising/model.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace dising {

MeanFields mean_fields(const Matrix& rho, const OperatorCache& cache, double imag_tolerance) {
  const int n = cache.n_sites();
  const std::size_t d = cache.dim();
  if (static_cast<std::size_t>(rho.rows()) != d || static_cast<std::size_t>(rho.cols()) != d) {
    throw ConfigError("density matrix dimension does not match the operator cache");
  }
  MeanFields fields{RealVector::Zero(n)};
  RealVector imag = RealVector::Zero(n);
  for (std::size_t b = 0; b < d; ++b) {
    const Complex diag = rho(b, b);
    for (int s = 0; s < n; ++s) {
      if (occupation_bit(b, s)) {
        fields.m[s] += diag.real();
        imag[s] += diag.imag();
      }
    }
  }
  for (int s = 0; s < n; ++s) {
    if (std::abs(imag[s]) > imag_tolerance) {
      throw NumericalError("Tr(n_" + std::to_string(s + 1) + " rho) has imaginary part " +
                           std::to_string(imag[s]) + "; state is not Hermitian");
    }
  }
  return fields;
}

namespace {

/// Interaction-only diagonal: lambda V sum_i n_i n_{i+1}.
RealVector quantum_bond_diagonal(const ChainParams& params, const OperatorCache& cache) {
  RealVector diag = RealVector::Zero(cache.dim());
  for (int i = 0; i < cache.n_bonds(); ++i) diag += cache.bond_diagonal(i);
  return params.lambda * params.v * diag;
}

void add_mean_field_terms(const ChainParams& params, const OperatorCache& cache,
                          const MeanFields& fields, RealVector& diag) {
  const double weight = (1.0 - params.lambda) * params.v;
  if (weight == 0.0) return;
  const int n = cache.n_sites();
  if (fields.m.size() != n) throw ConfigError("mean-field vector length does not match N");
  // Bond (i, i+1): m_i n_{i+1} + n_i m_{i+1} - m_i m_{i+1}.
  RealVector site_coeff = RealVector::Zero(n);
  double constant = 0.0;
  for (int i = 0; i < cache.n_bonds(); ++i) {
    const int j = (i + 1) % n;
    site_coeff[j] += fields.m[i];
    site_coeff[i] += fields.m[j];
    constant -= fields.m[i] * fields.m[j];
  }
  for (int s = 0; s < n; ++s) diag += (weight * site_coeff[s]) * cache.number_diagonal(s);
  diag.array() += weight * constant;
}

}  // namespace

void effective_hamiltonian_diagonal(const ChainParams& params, const OperatorCache& cache,
                                    const MeanFields& fields, RealVector& diagonal) {
  diagonal = cache.h0_diagonal() + quantum_bond_diagonal(params, cache);
  add_mean_field_terms(params, cache, fields, diagonal);
}

Matrix effective_hamiltonian(const ChainParams& params, const OperatorCache& cache,
                             const MeanFields& fields) {
  Matrix h = cache.h0();
  const int n = cache.n_sites();
  const double lv = params.lambda * params.v;
  const double mv = (1.0 - params.lambda) * params.v;
  const auto id = Matrix::Identity(cache.dim(), cache.dim());
  for (int i = 0; i < cache.n_bonds(); ++i) {
    const int j = (i + 1) % n;
    h += lv * cache.bond(i);
    h += mv * (fields.m[i] * cache.number(j) + fields.m[j] * cache.number(i) -
               fields.m[i] * fields.m[j] * id);
  }
  return h;
}

Matrix lindblad_rhs(const Matrix& rho, const ChainParams& params, const OperatorCache& cache) {
  RhsEvaluator eval(params, cache);
  Matrix out;
  eval(rho, out);
  return out;
}

Matrix lindblad_rhs_reference(const Matrix& rho, const ChainParams& params,
                              const OperatorCache& cache) {
  const MeanFields fields = mean_fields(rho, cache, std::numeric_limits<double>::infinity());
  const Matrix h = effective_hamiltonian(params, cache, fields);
  const Complex minus_i(0.0, -1.0);
  Matrix out = minus_i * (h * rho - rho * h);
  for (int s = 0; s < cache.n_sites(); ++s) {
    const Matrix& lower = cache.sigma_minus(s);
    const Matrix& num = cache.number(s);
    out += params.gamma * (lower * rho * lower.adjoint() - 0.5 * (num * rho + rho * num));
  }
  return out;
}

RhsEvaluator::RhsEvaluator(const ChainParams& params, const OperatorCache& cache,
                           kernels::Isa isa)
    : params_(params), cache_(&cache), isa_(isa) {
  params_.validate_allow_odd();
  if (params_.n_sites != cache.n_sites()) {
    throw ConfigError("parameter N does not match the operator cache");
  }
  if (!kernels::is_available(isa_)) isa_ = kernels::Isa::kScalar;
  static_diag_ = cache.h0_diagonal() + quantum_bond_diagonal(params_, cache);
  const std::size_t d = cache.dim();
  scratch_.resize(d, d);
}

void RhsEvaluator::operator()(const Matrix& rho, Matrix& out) {
  const std::size_t d = cache_->dim();
  fields_ = mean_fields(rho, *cache_);
  h_diag_ = static_diag_;
  add_mean_field_terms(params_, *cache_, fields_, h_diag_);
  out.resize(d, d);
  const kernels::RhsTerms terms{
      .n_sites = params_.n_sites,
      .half_omega = 0.5 * params_.omega,
      .gamma = params_.gamma,
      .h_diag = h_diag_.data(),
      .occupation = cache_->total_number_diagonal().data(),
      .jump_sign = sign_error_ ? -1.0 : 1.0,
  };
  kernels::apply_rhs(isa_, terms, rho.data(), out.data(), scratch_.data());
}

PartitionDistribution::PartitionDistribution(int n_bonds) : n_bonds_(n_bonds) {
  if (n_bonds < 1 || n_bonds > 2 * kMaxEnsembleSites) {
    throw SizeError("partition enumeration supports 1.." + std::to_string(kMaxEnsembleSites) +
                    " bonds");
  }
  prob_.assign(std::size_t{1} << n_bonds, 0.0);
}

PartitionDistribution PartitionDistribution::uniform(int n_bonds) {
  PartitionDistribution p(n_bonds);
  const double w = 1.0 / static_cast<double>(p.prob_.size());
  for (double& x : p.prob_) x = w;
  return p;
}

PartitionDistribution PartitionDistribution::point(int n_bonds, std::uint32_t subset) {
  PartitionDistribution p(n_bonds);
  p[subset] = 1.0;
  return p;
}

PartitionDistribution PartitionDistribution::alternating(int n_bonds) {
  if (n_bonds % 2 != 0) throw ConfigError("alternating partitions need an even bond count");
  PartitionDistribution p(n_bonds);
  std::uint32_t even = 0;
  for (int i = 0; i < n_bonds; i += 2) even |= 1u << i;
  p[even] = 0.5;
  p[even << 1] = 0.5;
  return p;
}

PartitionDistribution PartitionDistribution::bernoulli(int n_bonds, double prob) {
  PartitionDistribution p(n_bonds);
  for (std::uint32_t c = 0; c < p.prob_.size(); ++c) {
    const int k = std::popcount(c);
    p.prob_[c] = std::pow(prob, k) * std::pow(1.0 - prob, n_bonds - k);
  }
  return p;
}

std::uint32_t PartitionDistribution::shifted(std::uint32_t subset) const {
  const std::uint32_t full = (1u << n_bonds_) - 1u;
  return ((subset << 1) | (subset >> (n_bonds_ - 1))) & full;
}

bool PartitionDistribution::is_translation_invariant(double tol) const {
  for (std::uint32_t c = 0; c < prob_.size(); ++c) {
    if (std::abs(prob_[c] - prob_[shifted(c)]) > tol) return false;
  }
  return true;
}

bool PartitionDistribution::is_normalized(double tol) const {
  double total = 0.0;
  for (double x : prob_) {
    if (x < 0.0) return false;
    total += x;
  }
  return std::abs(total - 1.0) <= tol;
}

double PartitionDistribution::quantum_weight(int bond) const {
  double total = 0.0;
  for (std::uint32_t c = 0; c < prob_.size(); ++c) {
    if (!((c >> bond) & 1u)) total += prob_[c];
  }
  return total;
}

Matrix ensemble_hamiltonian(const PartitionDistribution& distribution, const OperatorCache& cache,
                            const MeanFields& fields) {
  const int n = cache.n_sites();
  if (n > kMaxEnsembleSites) {
    throw SizeError("ensemble enumeration is limited to N <= " +
                    std::to_string(kMaxEnsembleSites));
  }
  if (distribution.n_bonds() != cache.n_bonds()) {
    throw ConfigError("partition distribution bond count does not match the chain");
  }
  if (!distribution.is_normalized()) throw ConfigError("partition distribution is not normalized");
  if (!distribution.is_translation_invariant()) {
    throw ConfigError("partition distribution is not translation invariant");
  }
  const double v = cache.params().v;
  const auto id = Matrix::Identity(cache.dim(), cache.dim());
  Matrix total = Matrix::Zero(cache.dim(), cache.dim());
  for (std::uint32_t c = 0; c < (1u << distribution.n_bonds()); ++c) {
    const double p = distribution[c];
    if (p == 0.0) continue;
    Matrix h = cache.h0();
    for (int i = 0; i < cache.n_bonds(); ++i) {
      const int j = (i + 1) % n;
      const bool decoupled = (c >> i) & 1u;
      if (!decoupled) {
        h += v * cache.bond(i);
      } else {
        h += v * (fields.m[i] * cache.number(j) + fields.m[j] * cache.number(i) -
                  fields.m[i] * fields.m[j] * id);
      }
    }
    total += p * h;
  }
  return total;
}

}  // namespace dising
