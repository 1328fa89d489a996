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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dising/integrator.hpp"
#include "dising/observables.hpp"
#include "dising/validate.hpp"

using namespace dising;

namespace {

ChainParams chain(int n, double lambda) {
  ChainParams p;
  p.n_sites = n;
  p.lambda = lambda;
  return p;
}

double final_population(const ChainParams& p, double dt, Method method = Method::kRk4) {
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.method = method;
  cfg.dt = dt;
  cfg.t_max = 4.0;
  cfg.sample_interval = 0.5;
  InitialStateSpec init;
  init.random_amplitude = 0.8;
  init.seed = 2;
  return evolve(initial_state(init, p.n_sites), p, cache, cfg).populations.back()[0];
}

}  // namespace

TEST_CASE("initial product state") {
  InitialStateSpec spec;
  spec.theta0 = 0.4;
  spec.stagger = 0.1;
  const auto theta = site_angles(spec, 4);
  CHECK(theta[0] == doctest::Approx(0.3));
  CHECK(theta[1] == doctest::Approx(0.5));
  const ChainParams p = chain(4, 0.5);
  const OperatorCache cache(p);
  const auto n = site_populations(initial_state(spec, 4), cache);
  for (int s = 0; s < 4; ++s) CHECK(n[s] == doctest::Approx(std::pow(std::sin(theta[s] / 2), 2)));
  CHECK(site_angles(spec, 1)[0] == doctest::Approx(0.4));

  spec.random_amplitude = 0.5;
  spec.seed = 17;
  CHECK(site_angles(spec, 6) == site_angles(spec, 6));
  spec.seed = 18;
  const auto other = site_angles(spec, 6);
  spec.seed = 17;
  CHECK(other != site_angles(spec, 6));
}

TEST_CASE("free decay follows exp(-gamma t)") {
  ChainParams p = chain(1, 0.0);
  p.omega = 0.0;
  p.gamma = 1.0;
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.t_max = 8.0;
  InitialStateSpec init;
  init.theta0 = std::numbers::pi;
  const Trajectory t = evolve(initial_state(init, 1), p, cache, cfg);
  REQUIRE(t.times.size() == 161);
  for (std::size_t k = 0; k < t.times.size(); k += 10) {
    CHECK(t.populations[k][0] == doctest::Approx(std::exp(-t.times[k])).epsilon(1e-9));
  }
  CHECK(t.n_odd.empty());
}

TEST_CASE("single driven site relaxes to the optical Bloch value") {
  for (double delta : {0.0, 2.0, -1.3}) {
    ChainParams p = chain(1, 0.0);
    p.delta = delta;
    const OperatorCache cache(p);
    const SteadyStateResult ss =
        find_steady_state(initial_state({}, 1), p, cache, EvolveConfig{}, 1e-12, 500.0);
    REQUIRE(ss.converged);
    CHECK(std::abs(site_populations(ss.rho, cache)[0] -
                   single_site_population(delta, p.omega, p.gamma)) < 1e-10);
  }
}

TEST_CASE("rk4 error shrinks at fourth order") {
  const ChainParams p = chain(2, 0.3);
  const double ref = final_population(p, 0.00125);
  const double e1 = std::abs(final_population(p, 0.04) - ref);
  const double e2 = std::abs(final_population(p, 0.02) - ref);
  const double ratio = e1 / e2;
  CAPTURE(e1);
  CAPTURE(e2);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("adaptive and fixed steppers agree") {
  const ChainParams p = chain(4, 0.4);
  const double a = final_population(p, 0.005);
  const double b = final_population(p, 0.01, Method::kRk45);
  CHECK(std::abs(a - b) < 1e-7);
}

TEST_CASE("trajectory sampling and state validity") {
  const ChainParams p = chain(4, 0.2);
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.t_max = 20.0;
  cfg.sample_interval = 0.1;
  cfg.positivity_every = 10;
  const Trajectory t = evolve(initial_state({}, 4), p, cache, cfg);
  REQUIRE(t.times.size() == 201);
  for (std::size_t k = 1; k < t.times.size(); ++k) {
    CHECK(t.times[k] - t.times[k - 1] == doctest::Approx(0.1));
  }
  for (const auto& row : t.populations) {
    for (double x : row) {
      CHECK(x >= -1e-10);
      CHECK(x <= 1.0 + 1e-10);
    }
  }
  CHECK(t.diagnostics.max_trace_drift < 1e-12);
  CHECK(t.diagnostics.max_hermiticity_residual < 1e-10);
  CHECK(t.diagnostics.positivity_checks == 22);
  CHECK(t.diagnostics.min_eigenvalue > -1e-8);
  CHECK(std::abs(t.final_state.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("early stop freezes a stationary trajectory") {
  const ChainParams p = chain(2, 0.5);
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.t_max = 200.0;
  const Trajectory full = evolve(initial_state({}, 2), p, cache, cfg);
  cfg.stop_residual = 1e-11;
  const Trajectory fast = evolve(initial_state({}, 2), p, cache, cfg);
  CHECK(fast.diagnostics.steps < full.diagnostics.steps);
  CHECK(fast.times.size() == full.times.size());
  CHECK(std::abs(fast.populations.back()[0] - full.populations.back()[0]) < 1e-10);
}

TEST_CASE("integration failures carry the failure time") {
  const ChainParams p = chain(2, 0.5);
  const OperatorCache cache(p);
  EvolveConfig cfg;
  cfg.dt = 2.0;
  cfg.sample_interval = 2.0;
  cfg.t_max = 400.0;
  try {
    evolve(initial_state({}, 2), p, cache, cfg);
    FAIL("expected a numerical failure");
  } catch (const NumericalError& e) {
    CHECK(e.time() > 0.0);
  }
}

TEST_CASE("config validation") {
  EvolveConfig cfg;
  cfg.sample_interval = 0.001;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  InitialStateSpec spec;
  spec.random_amplitude = -1.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("linear limit: time evolution reaches the Liouvillian null vector") {
  for (int n : {2, 3, 4}) {
    const ChainParams p = chain(n, 1.0);
    const OperatorCache cache(p);
    const Matrix exact = liouvillian_steady_state(p, cache);
    CHECK(std::abs(exact.trace().real() - 1.0) < 1e-12);
    CHECK(min_eigenvalue(exact) > -1e-12);
    const SteadyStateResult ss =
        find_steady_state(initial_state({}, n), p, cache, EvolveConfig{}, 1e-11, 2000.0);
    REQUIRE(ss.converged);
    CHECK((ss.rho - exact).norm() < 1e-8);
  }
}

TEST_CASE("Liouvillian preconditions") {
  ChainParams p = chain(2, 0.5);
  CHECK_THROWS_AS(liouvillian(p, OperatorCache(p)), ConfigError);
  p = chain(6, 1.0);
  CHECK_THROWS_AS(liouvillian_steady_state(p, OperatorCache(p)), SizeError);
}

TEST_CASE("Liouvillian acts like the generator") {
  const ChainParams p = chain(3, 1.0);
  const OperatorCache cache(p);
  const Matrix L = liouvillian(p, cache);
  const Matrix rho = random_density_matrix(3, 5);
  const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
  const Eigen::VectorXcd lv = L * v;
  const Matrix out = Eigen::Map<const Matrix>(lv.data(), 8, 8);
  CHECK((out - lindblad_rhs(rho, p, cache)).norm() < 1e-12);
}
