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

#include "dising/observables.hpp"

#include <cmath>
#include <string>

namespace dising {

std::vector<double> site_populations(const Matrix& rho, const OperatorCache& cache,
                                     double tolerance) {
  const MeanFields fields = mean_fields(rho, cache);
  std::vector<double> out(fields.m.data(), fields.m.data() + fields.m.size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (!(out[s] >= -tolerance && out[s] <= 1.0 + tolerance)) {
      throw NumericalError("population of site " + std::to_string(s + 1) + " = " +
                           std::to_string(out[s]) + " is outside [0, 1]");
    }
  }
  return out;
}

SublatticeAverages sublattice_averages(std::span<const double> populations) {
  const std::size_t n = populations.size();
  if (n == 0 || n % 2 != 0) throw ConfigError("sublattice averages need an even number of sites");
  SublatticeAverages avg;
  for (std::size_t s = 0; s < n; s += 2) {
    avg.odd += populations[s];
    avg.even += populations[s + 1];
  }
  avg.odd *= 2.0 / static_cast<double>(n);
  avg.even *= 2.0 / static_cast<double>(n);
  return avg;
}

void VarianceWindow::validate() const {
  if (!(sample_interval > 0.0) || !(length > 0.0) || !(start >= 0.0)) {
    throw ConfigError("variance window needs start >= 0 and positive length and spacing");
  }
  if (length / sample_interval < 100.0 * (1.0 - 1e-12)) {
    throw ConfigError("variance window must contain at least 100 sample intervals");
  }
}

std::size_t VarianceWindow::sample_count() const {
  return static_cast<std::size_t>(std::llround(length / sample_interval));
}

std::vector<std::size_t> window_indices(const Trajectory& trajectory, double start, double length,
                                        double spacing) {
  const double dt = trajectory.sample_interval;
  if (trajectory.times.empty() || !(dt > 0.0)) throw ConfigError("trajectory has no samples");
  const double stride_f = spacing / dt;
  const auto stride = static_cast<std::size_t>(std::llround(stride_f));
  if (stride == 0 || std::abs(stride_f - static_cast<double>(stride)) > 1e-6) {
    throw ConfigError("window spacing must be a multiple of the trajectory sample interval");
  }
  const double first_f = start / dt;
  const auto first = static_cast<std::size_t>(std::llround(first_f));
  if (std::abs(first_f - static_cast<double>(first)) > 1e-6) {
    throw ConfigError("window start is not on the trajectory sample grid");
  }
  const auto count = static_cast<std::size_t>(std::llround(length / spacing));
  if (count == 0) throw ConfigError("window is empty");
  const std::size_t last = first + (count - 1) * stride;
  if (last >= trajectory.times.size()) {
    throw ConfigError("window [" + std::to_string(start) + ", " + std::to_string(start + length) +
                      ") extends past the trajectory end t = " +
                      std::to_string(trajectory.times.back()));
  }
  std::vector<std::size_t> idx(count);
  for (std::size_t k = 0; k < count; ++k) idx[k] = first + k * stride;
  return idx;
}

double pooled_variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double x : values) var += (x - mean) * (x - mean);
  return var / static_cast<double>(values.size());
}

double variance_D(const Trajectory& trajectory, const VarianceWindow& window) {
  window.validate();
  const auto idx =
      window_indices(trajectory, window.start, window.length, window.sample_interval);
  std::vector<double> pooled;
  pooled.reserve(idx.size() * static_cast<std::size_t>(trajectory.n_sites));
  for (std::size_t k : idx) {
    for (double x : trajectory.populations[k]) pooled.push_back(x);
  }
  return pooled_variance(pooled);
}

namespace {

double z_of(std::size_t b, int s) { return occupation_bit(b, s) ? 1.0 : -1.0; }

void check_dim(const Matrix& rho, int n_sites) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n_sites));
  if (rho.rows() != d || rho.cols() != d) throw ConfigError("density matrix dimension mismatch");
}

}  // namespace

double connected_zz(const Matrix& rho, int n_sites, int i, int j) {
  check_dim(rho, n_sites);
  double zi = 0.0, zj = 0.0, zij = 0.0;
  for (std::size_t b = 0; b < dimension_for(n_sites); ++b) {
    const double p = rho(b, b).real();
    zi += p * z_of(b, i);
    zj += p * z_of(b, j);
    zij += p * z_of(b, i) * z_of(b, j);
  }
  return zij - zi * zj;
}

double correlation_function(const Matrix& rho, int n_sites, int r) {
  if (r < 1 || r > n_sites / 2) {
    throw ConfigError("correlation distance must satisfy 1 <= r <= N/2");
  }
  double total = 0.0;
  for (int i = 0; i < n_sites; ++i) {
    total += std::abs(connected_zz(rho, n_sites, i, (i + r) % n_sites));
  }
  return total / n_sites;
}

std::vector<double> correlation_functions(const Matrix& rho, int n_sites) {
  std::vector<double> out;
  for (int r = 1; r <= n_sites / 2; ++r) out.push_back(correlation_function(rho, n_sites, r));
  return out;
}

Matrix partial_transpose(const Matrix& rho, std::uint32_t site_mask, int n_sites) {
  check_dim(rho, n_sites);
  const std::size_t d = dimension_for(n_sites);
  const std::size_t mask = site_mask & (d - 1);
  Matrix out(d, d);
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t swap = (a ^ b) & mask;
      out(a, b) = rho(a ^ swap, b ^ swap);
    }
  }
  return out;
}

std::uint32_t odd_site_mask(int n_sites) {
  std::uint32_t mask = 0;
  for (int s = 0; s < n_sites; s += 2) mask |= 1u << s;
  return mask;
}

std::uint32_t even_site_mask(int n_sites) {
  std::uint32_t mask = 0;
  for (int s = 1; s < n_sites; s += 2) mask |= 1u << s;
  return mask;
}

NegativityResult negativity(const Matrix& rho, int n_sites, double zero_threshold) {
  if (n_sites % 2 != 0) throw ConfigError("negativity partitions need even N");
  NegativityResult result;
  auto spectrum = [&](std::uint32_t mask) {
    const Matrix pt = partial_transpose(rho, mask, n_sites);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (pt + pt.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    return RealVector(solver.eigenvalues());
  };
  result.odd_eigenvalues = spectrum(odd_site_mask(n_sites));
  result.even_eigenvalues = spectrum(even_site_mask(n_sites));
  for (const RealVector* eig : {&result.odd_eigenvalues, &result.even_eigenvalues}) {
    for (double e : *eig) {
      if (e < 0.0 && -e >= zero_threshold) result.value += -e;
    }
  }
  return result;
}

}  // namespace dising
