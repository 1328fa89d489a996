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

#include "dising/validate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>

#include "dising/classical.hpp"
#include "dising/integrator.hpp"
#include "dising/observables.hpp"

namespace dising {

namespace {

ChainParams chain(int n, double lambda, double v = 5.0) {
  ChainParams p;
  p.n_sites = n;
  p.lambda = lambda;
  p.v = v;
  return p;
}

CheckResult judge(std::string name, double residual, double tolerance, std::string detail = "") {
  return {std::move(name), residual <= tolerance, residual, tolerance, std::move(detail)};
}

CheckResult rhs_kernels() {
  const ChainParams p = chain(6, 0.3);
  const OperatorCache cache(p);
  const Matrix rho = random_density_matrix(6, 11);
  if (!kernels::is_available(kernels::Isa::kAvx2)) {
    return {"kernel_equivalence", true, 0.0, 1e-12, "avx2 unavailable; scalar only"};
  }
  Matrix a, b;
  RhsEvaluator scalar(p, cache, kernels::Isa::kScalar);
  RhsEvaluator wide(p, cache, kernels::Isa::kAvx2);
  scalar(rho, a);
  wide(rho, b);
  return judge("kernel_equivalence", (a - b).norm() / a.norm(), 1e-12, "scalar vs avx2, N=6");
}

CheckResult rhs_reference() {
  const ChainParams p = chain(5, 0.35);
  const OperatorCache cache(p);
  const Matrix rho = random_density_matrix(5, 12);
  const Matrix fast = lindblad_rhs(rho, p, cache);
  const Matrix ref = lindblad_rhs_reference(rho, p, cache);
  return judge("dense_reference", (fast - ref).norm() / ref.norm(), 1e-12,
               "structured vs dense generator, N=5");
}

CheckResult trace_conservation(bool mutate) {
  const ChainParams p = chain(4, 0.4);
  const OperatorCache cache(p);
  RhsEvaluator eval(p, cache);
  eval.inject_dissipator_sign_error(mutate);
  double worst = 0.0;
  Matrix out;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Matrix rho = random_density_matrix(4, 100 + seed);
    eval(rho, out);
    worst = std::max(worst, std::abs(out.trace()));
    worst = std::max(worst, (out - out.adjoint()).norm());
  }
  return judge("trace_conservation", worst, 1e-12, "|Tr rhs| and ||rhs - rhs^dagger||, N=4");
}

CheckResult state_validity() {
  const ChainParams p = chain(4, 0.3);
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.t_max = 50.0;
  cfg.positivity_every = 20;
  InitialStateSpec init;
  init.random_amplitude = 0.4;
  init.seed = 5;
  const Trajectory t = evolve(initial_state(init, 4), p, cache, cfg);
  const StateDiagnostics& d = t.diagnostics;
  const double worst = std::max({d.max_trace_drift / 1e-8, d.max_hermiticity_residual / 1e-10,
                                 -d.min_eigenvalue / 1e-6});
  return judge("state_validity", std::max(worst, 0.0), 1.0,
               "trace/1e-8, hermiticity/1e-10, -min eig/1e-6 over t in [0, 50], N=4");
}

CheckResult bloch_equivalence() {
  ChainParams p = chain(6, 0.0);
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.t_max = 50.0;
  double worst = 0.0;
  for (std::uint64_t seed : {1u, 2u}) {
    InitialStateSpec init;
    init.random_amplitude = 0.5;
    init.seed = seed;
    const Trajectory full = evolve(initial_state(init, 6), p, cache, cfg);
    const BlochRun mf = evolve_bloch(bloch_initial_state(init, 6), p, cfg);
    for (std::size_t k = 0; k < full.times.size(); ++k) {
      for (int s = 0; s < 6; ++s) {
        worst = std::max(worst, std::abs(full.populations[k][s] -
                                         mf.trajectory.populations[k][s]));
      }
    }
  }
  return judge("bloch_equivalence", worst, 1e-6, "lambda=0, N=6, t in [0, 50], two random starts");
}

CheckResult liouvillian_equivalence() {
  const ChainParams p = chain(4, 1.0);
  const OperatorCache cache(p);
  const Matrix exact = liouvillian_steady_state(p, cache);
  EvolveConfig cfg;
  const SteadyStateResult ss =
      find_steady_state(initial_state(InitialStateSpec{}, 4), p, cache, cfg, 1e-11, 2000.0);
  const auto a = site_populations(exact, cache);
  const auto b = site_populations(ss.rho, cache);
  double worst = ss.converged ? 0.0 : std::numeric_limits<double>::infinity();
  for (int s = 0; s < 4; ++s) worst = std::max(worst, std::abs(a[s] - b[s]));
  return judge("liouvillian_equivalence", worst, 1e-6,
               "lambda=1, N=4 time evolution vs null space");
}

CheckResult ensemble_identity() {
  ChainParams p = chain(4, 0.5);
  const OperatorCache cache(p);
  MeanFields fields{RealVector(4)};
  fields.m << 0.3, 0.7, 0.2, 0.5;
  struct Case {
    PartitionDistribution dist;
    double lambda;
  };
  const Case cases[] = {{PartitionDistribution::uniform(4), 0.5},
                        {PartitionDistribution::alternating(4), 0.5},
                        {PartitionDistribution::bernoulli(4, 0.3), 0.7}};
  double worst = 0.0;
  for (const Case& c : cases) {
    p.lambda = c.lambda;
    const Matrix h = effective_hamiltonian(p, cache, fields);
    worst = std::max(worst, (ensemble_hamiltonian(c.dist, cache, fields) - h).norm());
  }
  return judge("ensemble_identity", worst, 1e-12, "uniform, alternating, bernoulli(0.3) P at N=4");
}

CheckResult bell_negativity() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi[1] = psi[2] = 1.0 / std::numbers::sqrt2;
  const Matrix rho = psi * psi.adjoint();
  const NegativityResult n = negativity(rho, 2);
  RealVector ev = n.odd_eigenvalues;
  std::sort(ev.data(), ev.data() + ev.size());
  double err = std::abs(n.value - 1.0);
  const double expect[] = {-0.5, 0.5, 0.5, 0.5};
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(ev[i] - expect[i]));
  err = std::max(err, std::abs(correlation_function(rho, 2, 1) - 1.0));
  return judge("bell_state", err, 1e-10, "negativity 1, PT spectrum {-1/2, 1/2 x3}, C_1 = 1");
}

CheckResult product_state() {
  InitialStateSpec init;
  init.random_amplitude = 1.0;
  init.seed = 9;
  const Matrix rho = initial_state(init, 4);
  double worst = negativity(rho, 4).value;
  for (double c : correlation_functions(rho, 4)) worst = std::max(worst, std::abs(c));
  return judge("product_state", worst, 1e-8, "negativity and C_r of a random product state, N=4");
}

CheckResult single_site() {
  ChainParams p = chain(1, 0.0);
  const OperatorCache cache(p);
  const SteadyStateResult ss = find_steady_state(initial_state(InitialStateSpec{}, 1), p, cache,
                                                 EvolveConfig{}, 1e-12, 500.0);
  const double n = site_populations(ss.rho, cache)[0];
  return judge("single_site_steady", std::abs(n - single_site_population(p.delta, p.omega, p.gamma)),
               1e-8, "Delta=2, Omega=1.5");
}

CheckResult decay_law() {
  ChainParams p = chain(1, 0.0);
  p.omega = 0.0;
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.t_max = 10.0;
  InitialStateSpec init;
  init.theta0 = std::numbers::pi;
  init.stagger = 0.0;
  const Trajectory t = evolve(initial_state(init, 1), p, cache, cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    worst = std::max(worst, std::abs(t.populations[k][0] - std::exp(-t.times[k])));
  }
  return judge("decay_law", worst, 1e-8, "N=1, Omega=0, start up: n(t) = exp(-t)");
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Matrix random_density_matrix(int n_sites, std::uint64_t seed) {
  const std::size_t d = dimension_for(n_sites);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) a(i, j) = Complex(g(rng), g(rng));
  }
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

double single_site_population(double delta, double omega, double gamma) {
  const double w = 0.25 * omega * omega;
  return w / (delta * delta + 0.25 * gamma * gamma + 2.0 * w);
}

ValidationReport run_validation(const ValidationOptions& options) {
  const std::vector<std::pair<const char*, std::function<CheckResult()>>> checks = {
      {"kernel_equivalence", rhs_kernels},
      {"dense_reference", rhs_reference},
      {"trace_conservation",
       [&] { return trace_conservation(options.inject_dissipator_sign_error); }},
      {"state_validity", state_validity},
      {"bloch_equivalence", bloch_equivalence},
      {"liouvillian_equivalence", liouvillian_equivalence},
      {"ensemble_identity", ensemble_identity},
      {"bell_state", bell_negativity},
      {"product_state", product_state},
      {"single_site_steady", single_site},
      {"decay_law", decay_law},
  };
  ValidationReport report;
  for (const auto& [name, run] : checks) {
    try {
      report.checks.push_back(run());
    } catch (const std::exception& e) {
      report.checks.push_back({name, false, std::numeric_limits<double>::infinity(), 0.0,
                               std::string("threw: ") + e.what()});
    }
  }
  return report;
}

}  // namespace dising
