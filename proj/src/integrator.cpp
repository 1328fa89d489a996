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

#include "dising/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace dising {

void InitialStateSpec::validate() const {
  if (!std::isfinite(theta0) || !std::isfinite(stagger) || !std::isfinite(random_amplitude)) {
    throw ConfigError("initial-state angles must be finite");
  }
  if (stagger < 0.0) throw ConfigError("stagger amplitude must be >= 0");
  if (random_amplitude < 0.0) throw ConfigError("random perturbation amplitude must be >= 0");
}

std::vector<double> site_angles(const InitialStateSpec& spec, int n_sites) {
  spec.validate();
  std::vector<double> theta(n_sites);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int s = 0; s < n_sites; ++s) {
    const int j = s + 1;
    theta[s] = spec.theta0;
    if (n_sites > 1) theta[s] += (j % 2 == 0 ? 1.0 : -1.0) * spec.stagger;
    if (spec.random_amplitude > 0.0) theta[s] += spec.random_amplitude * unit(rng);
  }
  return theta;
}

Matrix initial_state(const InitialStateSpec& spec, int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) throw SizeError("n_sites out of range");
  const std::vector<double> theta = site_angles(spec, n_sites);
  const std::size_t d = dimension_for(n_sites);
  Eigen::VectorXcd psi(d);
  for (std::size_t b = 0; b < d; ++b) {
    double amp = 1.0;
    for (int s = 0; s < n_sites; ++s) {
      amp *= occupation_bit(b, s) ? std::sin(0.5 * theta[s]) : std::cos(0.5 * theta[s]);
    }
    psi[b] = amp;
  }
  Matrix rho = psi * psi.adjoint();
  rho /= rho.trace().real();
  return rho;
}

void EvolveConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_max >= 0.0)) throw ConfigError("t_max must be >= 0");
  if (!(sample_interval >= dt * (1.0 - 1e-12))) {
    throw ConfigError("sample interval must be >= dt");
  }
  if (hermitize_interval < 1) throw ConfigError("hermitize interval must be >= 1 step");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(trace_tolerance > 0.0) ||
      !(hermiticity_tolerance > 0.0) || !(steady_tolerance > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  if (positivity_every < 0) throw ConfigError("positivity interval must be >= 0");
  if (!(stop_residual >= 0.0)) throw ConfigError("stop residual must be >= 0");
}

double min_eigenvalue(const Matrix& rho) {
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

std::string at_time(double t) { return " at t = " + std::to_string(t); }

/// Owns the integration state and all stage buffers for one trajectory.
class Propagator {
 public:
  Propagator(const Matrix& rho0, const ChainParams& params, const OperatorCache& cache,
             const EvolveConfig& config, kernels::Isa isa)
      : config_(config), eval_(params, cache, isa), cache_(&cache), rho_(rho0) {
    config_.validate();
    const auto d = static_cast<Eigen::Index>(cache.dim());
    if (rho_.rows() != d || rho_.cols() != d) {
      throw ConfigError("initial state dimension does not match N");
    }
    check_state();
    h_adaptive_ = config_.dt;
  }

  double time() const { return t_; }
  const Matrix& state() const { return rho_; }
  StateDiagnostics& diagnostics() { return diag_; }

  void advance_to(double t_target) {
    if (config_.method == Method::kRk4) {
      const double span = t_target - t_;
      if (span <= 0.0) return;
      const auto steps = static_cast<long>(std::ceil(span / config_.dt - 1e-9));
      const double h = span / static_cast<double>(steps);
      for (long i = 0; i < steps; ++i) {
        rk4_step(h);
        t_ = (i + 1 == steps) ? t_target : t_ + h;
        after_step();
      }
    } else {
      while (t_target - t_ > 1e-12 * std::max(1.0, std::abs(t_target))) {
        const double h = std::min(h_adaptive_, t_target - t_);
        if (rk45_try(h)) {
          t_ = (h == t_target - t_) ? t_target : t_ + h;
          after_step();
        }
      }
    }
  }

  double residual() {
    eval_(rho_, k_[0]);
    have_k1_ = true;
    return k_[0].norm();
  }

  const MeanFields& populations() {
    fields_ = mean_fields(rho_, *cache_, 1e-8);
    for (int s = 0; s < fields_.m.size(); ++s) {
      if (!std::isfinite(fields_.m[s])) throw NumericalError("non-finite population" + at_time(t_), t_);
    }
    return fields_;
  }

  void check_positivity() {
    const double ev = min_eigenvalue(rho_);
    diag_.min_eigenvalue = std::min(diag_.min_eigenvalue, ev);
    ++diag_.positivity_checks;
  }

 private:
  void check_state() {
    const double herm = (rho_ - rho_.adjoint()).norm();
    const double drift = std::abs(rho_.trace() - Complex(1.0, 0.0));
    if (!std::isfinite(herm) || !std::isfinite(drift)) {
      throw NumericalError("non-finite density matrix" + at_time(t_), t_);
    }
    diag_.max_hermiticity_residual = std::max(diag_.max_hermiticity_residual, herm);
    diag_.max_trace_drift = std::max(diag_.max_trace_drift, drift);
    if (herm > config_.hermiticity_tolerance) {
      throw NumericalError("Hermiticity drift " + std::to_string(herm) + at_time(t_), t_);
    }
    if (drift > config_.trace_tolerance) {
      throw NumericalError("trace drift " + std::to_string(drift) + at_time(t_), t_);
    }
  }

  void after_step() {
    ++diag_.steps;
    if (++since_hermitize_ < config_.hermitize_interval) return;
    since_hermitize_ = 0;
    check_state();
    tmp_ = 0.5 * (rho_ + rho_.adjoint());
    rho_ = tmp_ / tmp_.trace().real();
    have_k1_ = false;
  }

  void rk4_step(double h) {
    if (!have_k1_) eval_(rho_, k_[0]);
    have_k1_ = false;
    tmp_.noalias() = rho_ + (0.5 * h) * k_[0];
    eval_(tmp_, k_[1]);
    tmp_.noalias() = rho_ + (0.5 * h) * k_[1];
    eval_(tmp_, k_[2]);
    tmp_.noalias() = rho_ + h * k_[2];
    eval_(tmp_, k_[3]);
    rho_ += (h / 6.0) * (k_[0] + 2.0 * k_[1] + 2.0 * k_[2] + k_[3]);
  }

  // Dormand-Prince 5(4) with first-same-as-last reuse of the final stage.
  bool rk45_try(double h) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    if (!have_k1_) eval_(rho_, k_[0]);
    have_k1_ = true;
    tmp_.noalias() = rho_ + h * a21 * k_[0];
    eval_(tmp_, k_[1]);
    tmp_.noalias() = rho_ + h * (a31 * k_[0] + a32 * k_[1]);
    eval_(tmp_, k_[2]);
    tmp_.noalias() = rho_ + h * (a41 * k_[0] + a42 * k_[1] + a43 * k_[2]);
    eval_(tmp_, k_[3]);
    tmp_.noalias() = rho_ + h * (a51 * k_[0] + a52 * k_[1] + a53 * k_[2] + a54 * k_[3]);
    eval_(tmp_, k_[4]);
    tmp_.noalias() =
        rho_ + h * (a61 * k_[0] + a62 * k_[1] + a63 * k_[2] + a64 * k_[3] + a65 * k_[4]);
    eval_(tmp_, k_[5]);
    next_.noalias() =
        rho_ + h * (b1 * k_[0] + b3 * k_[2] + b4 * k_[3] + b5 * k_[4] + b6 * k_[5]);
    eval_(next_, k_[6]);
    err_.noalias() =
        h * (e1 * k_[0] + e3 * k_[2] + e4 * k_[3] + e5 * k_[4] + e6 * k_[5] + e7 * k_[6]);

    const Eigen::ArrayXXd scale =
        config_.abs_tol + config_.rel_tol * rho_.array().abs().max(next_.array().abs());
    const double err = (err_.array().abs() / scale).maxCoeff();
    if (!std::isfinite(err)) throw NumericalError("non-finite error estimate" + at_time(t_), t_);

    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      rho_.swap(next_);
      k_[0].swap(k_[6]);
      h_adaptive_ = std::min(h * factor, config_.sample_interval);
      return true;
    }
    ++diag_.rejected_steps;
    h_adaptive_ = h * factor;
    if (h_adaptive_ < 1e-12) throw NumericalError("step size underflow" + at_time(t_), t_);
    return false;
  }

  EvolveConfig config_;
  RhsEvaluator eval_;
  const OperatorCache* cache_;
  Matrix rho_;
  Matrix tmp_, next_, err_;
  Matrix k_[7];
  bool have_k1_ = false;
  double t_ = 0.0;
  double h_adaptive_ = 0.0;
  int since_hermitize_ = 0;
  StateDiagnostics diag_;
  MeanFields fields_;
};

std::size_t sample_count(const EvolveConfig& config) {
  return static_cast<std::size_t>(std::floor(config.t_max / config.sample_interval + 1e-9)) + 1;
}

}  // namespace

Trajectory evolve(const Matrix& rho0, const ChainParams& params, const OperatorCache& cache,
                  const EvolveConfig& config, kernels::Isa isa) {
  Propagator prop(rho0, params, cache, config, isa);
  const int n = cache.n_sites();
  const bool sublattices = n % 2 == 0;
  const std::size_t samples = sample_count(config);

  Trajectory traj;
  traj.n_sites = n;
  traj.sample_interval = config.sample_interval;
  traj.times.reserve(samples);
  traj.populations.reserve(samples);

  bool frozen = false;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * config.sample_interval;
    if (!frozen) {
      prop.advance_to(t);
      if (config.stop_residual > 0.0 && k % 20 == 0 && prop.residual() < config.stop_residual) {
        frozen = true;
      }
    }
    const MeanFields& pops = prop.populations();
    traj.times.push_back(t);
    traj.populations.emplace_back(pops.m.data(), pops.m.data() + n);
    if (sublattices) {
      double odd = 0.0, even = 0.0;
      for (int s = 0; s < n; s += 2) {
        odd += pops.m[s];
        even += pops.m[s + 1];
      }
      traj.n_odd.push_back(2.0 * odd / n);
      traj.n_even.push_back(2.0 * even / n);
    }
    if (!frozen && config.positivity_every > 0 &&
        k % static_cast<std::size_t>(config.positivity_every) == 0) {
      prop.check_positivity();
    }
  }
  prop.check_positivity();
  traj.residual = prop.residual();
  traj.converged = traj.residual < config.steady_tolerance;
  traj.final_state = prop.state();
  traj.diagnostics = prop.diagnostics();
  return traj;
}

SteadyStateResult find_steady_state(const Matrix& rho0, const ChainParams& params,
                                    const OperatorCache& cache, const EvolveConfig& config,
                                    double tol_rhs, double t_max, kernels::Isa isa) {
  if (!(tol_rhs > 0.0)) throw ConfigError("steady-state tolerance must be positive");
  Propagator prop(rho0, params, cache, config, isa);
  SteadyStateResult result;
  for (std::size_t k = 0;; ++k) {
    const double t = std::min(static_cast<double>(k) * config.sample_interval, t_max);
    prop.advance_to(t);
    result.residual = prop.residual();
    if (result.residual < tol_rhs) {
      result.converged = true;
      break;
    }
    if (t >= t_max) break;
  }
  prop.check_positivity();
  result.time = prop.time();
  result.rho = prop.state();
  result.diagnostics = prop.diagnostics();
  return result;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Matrix liouvillian(const ChainParams& params, const OperatorCache& cache) {
  if (params.lambda != 1.0) {
    throw ConfigError("the generator is linear only at lambda = 1");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(cache.dim());
  const Matrix id = Matrix::Identity(d, d);
  const Matrix h = effective_hamiltonian(params, cache, MeanFields{RealVector::Zero(cache.n_sites())});
  const Complex minus_i(0.0, -1.0);
  // vec(A X B) = (B^T (x) A) vec(X) for column-major vec.
  Matrix super = minus_i * (kron(id, h) - kron(h.transpose(), id));
  for (int s = 0; s < cache.n_sites(); ++s) {
    const Matrix& lower = cache.sigma_minus(s);
    const Matrix& num = cache.number(s);
    super += params.gamma * (kron(lower.conjugate(), lower) - 0.5 * kron(id, num) -
                             0.5 * kron(num.transpose(), id));
  }
  return super;
}

Matrix liouvillian_steady_state(const ChainParams& params, const OperatorCache& cache,
                                int max_sites) {
  if (params.lambda != 1.0) {
    throw ConfigError("Liouvillian null space requires lambda = 1 (linear generator)");
  }
  if (cache.n_sites() > max_sites) {
    throw SizeError("Liouvillian steady state is limited to N <= " + std::to_string(max_sites));
  }
  const Matrix super = liouvillian(params, cache);
  Eigen::BDCSVD<Matrix> svd(super, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double threshold = 1e-10 * std::max(1.0, sv[0]);
  int null_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] < threshold) ++null_dim;
  }
  if (null_dim != 1) {
    throw NumericalError("Liouvillian null space has dimension " + std::to_string(null_dim));
  }
  const Eigen::Index d = static_cast<Eigen::Index>(cache.dim());
  const Eigen::VectorXcd v = svd.matrixV().col(sv.size() - 1);
  Matrix rho = Eigen::Map<const Matrix>(v.data(), d, d);
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double residual = lindblad_rhs_reference(rho, params, cache).norm();
  if (residual >= 1e-10) {
    throw NumericalError("Liouvillian steady state residual " + std::to_string(residual));
  }
  return rho;
}

}  // namespace dising
