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

#include "dising/classical.hpp"

#include <algorithm>
#include <cmath>

namespace dising {

BlochState bloch_initial_state(const InitialStateSpec& spec, int n_sites) {
  const std::vector<double> theta = site_angles(spec, n_sites);
  BlochState state{Eigen::Matrix3Xd(3, n_sites)};
  for (int j = 0; j < n_sites; ++j) {
    state.s.col(j) << std::sin(theta[j]), 0.0, -std::cos(theta[j]);
  }
  return state;
}

BlochState bloch_rhs(const BlochState& state, const ChainParams& params) {
  const int n = state.n_sites();
  const double g = params.gamma;
  const double w = params.omega;
  BlochState out{Eigen::Matrix3Xd(3, n)};
  for (int j = 0; j < n; ++j) {
    double neighbours = 0.0;
    if (n >= 2) neighbours = state.population((j + n - 1) % n) + state.population((j + 1) % n);
    const double detuning = params.delta - params.v * neighbours;
    const double sx = state.s(0, j), sy = state.s(1, j), sz = state.s(2, j);
    out.s(0, j) = detuning * sy - 0.5 * g * sx;
    out.s(1, j) = -detuning * sx - w * sz - 0.5 * g * sy;
    out.s(2, j) = w * sy - g * (sz + 1.0);
  }
  return out;
}

namespace {

using State = Eigen::Matrix3Xd;

State f(const State& s, const ChainParams& params) { return bloch_rhs(BlochState{s}, params).s; }

void rk4(State& y, double h, const ChainParams& p) {
  const State k1 = f(y, p);
  const State k2 = f(y + 0.5 * h * k1, p);
  const State k3 = f(y + 0.5 * h * k2, p);
  const State k4 = f(y + h * k3, p);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4); returns true and advances y when the step is accepted.
bool dopri(State& y, double h, double& h_next, const ChainParams& p, const EvolveConfig& cfg) {
  const State k1 = f(y, p);
  const State k2 = f(y + h * (1.0 / 5.0) * k1, p);
  const State k3 = f(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2), p);
  const State k4 = f(y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3), p);
  const State k5 = f(y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                              64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4),
                     p);
  const State k6 = f(y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 +
                              49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5),
                     p);
  const State next = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                              2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
  const State k7 = f(next, p);
  const State err = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4 -
                         17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7);
  const Eigen::ArrayXXd scale = cfg.abs_tol + cfg.rel_tol * y.array().abs().max(next.array().abs());
  const double e = (err.array().abs() / scale).maxCoeff();
  if (!std::isfinite(e)) throw NumericalError("non-finite Bloch error estimate");
  const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
  h_next = std::min(h * factor, cfg.sample_interval);
  if (e > 1.0) return false;
  y = next;
  return true;
}

}  // namespace

BlochRun evolve_bloch(const BlochState& initial, const ChainParams& params,
                      const EvolveConfig& config) {
  config.validate();
  params.validate_allow_odd();
  const int n = initial.n_sites();
  if (n != params.n_sites) throw ConfigError("Bloch state size does not match N");

  BlochRun run;
  Trajectory& traj = run.trajectory;
  traj.n_sites = n;
  traj.sample_interval = config.sample_interval;
  State y = initial.s;
  double t = 0.0;
  double h_adaptive = config.dt;
  const auto samples =
      static_cast<std::size_t>(std::floor(config.t_max / config.sample_interval + 1e-9)) + 1;

  for (std::size_t k = 0; k < samples; ++k) {
    const double target = static_cast<double>(k) * config.sample_interval;
    if (config.method == Method::kRk4) {
      const double span = target - t;
      if (span > 0.0) {
        const auto steps = static_cast<long>(std::ceil(span / config.dt - 1e-9));
        const double h = span / static_cast<double>(steps);
        for (long i = 0; i < steps; ++i) rk4(y, h, params);
      }
    } else {
      while (target - t > 1e-12 * std::max(1.0, target)) {
        const double h = std::min(h_adaptive, target - t);
        if (dopri(y, h, h_adaptive, params, config)) t += h;
        if (h_adaptive < 1e-12) throw NumericalError("Bloch step size underflow", t);
      }
    }
    t = target;
    if (!y.allFinite()) throw NumericalError("non-finite Bloch state", t);

    std::vector<double> pops(n);
    for (int j = 0; j < n; ++j) pops[j] = 0.5 * (y(2, j) + 1.0);
    run.max_bloch_norm = std::max(run.max_bloch_norm, y.colwise().norm().maxCoeff());
    traj.times.push_back(t);
    if (n % 2 == 0) {
      double odd = 0.0, even = 0.0;
      for (int j = 0; j < n; j += 2) {
        odd += pops[j];
        even += pops[j + 1];
      }
      traj.n_odd.push_back(2.0 * odd / n);
      traj.n_even.push_back(2.0 * even / n);
    }
    traj.populations.push_back(std::move(pops));
  }
  run.final_state = BlochState{y};
  const State rate = f(y, params);
  traj.residual = rate.norm();
  traj.converged = traj.residual < config.steady_tolerance;
  return run;
}

}  // namespace dising
