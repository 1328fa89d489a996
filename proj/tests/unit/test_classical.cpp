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

#include "dising/classical.hpp"
#include "dising/validate.hpp"

using namespace dising;

namespace {

EvolveConfig short_run(double t_max) {
  EvolveConfig cfg;
  cfg.t_max = t_max;
  cfg.sample_interval = 0.1;
  return cfg;
}

}  // namespace

TEST_CASE("mean-field limit of the full model equals the Bloch equations") {
  for (int n : {2, 4}) {
    ChainParams p;
    p.n_sites = n;
    p.lambda = 0.0;
    p.v = 7.0;
    const OperatorCache cache(p);
    InitialStateSpec init;
    init.random_amplitude = 0.7;
    init.seed = 21;
    const EvolveConfig cfg = short_run(30.0);
    const Trajectory full = evolve(initial_state(init, n), p, cache, cfg);
    const BlochRun mf = evolve_bloch(bloch_initial_state(init, n), p, cfg);
    REQUIRE(mf.trajectory.times.size() == full.times.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < full.times.size(); ++k) {
      for (int s = 0; s < n; ++s) {
        worst = std::max(worst, std::abs(full.populations[k][s] - mf.trajectory.populations[k][s]));
      }
    }
    CAPTURE(n);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("single Bloch vector relaxes to the analytic steady state") {
  ChainParams p;
  p.n_sites = 1;
  const BlochRun run = evolve_bloch(bloch_initial_state({}, 1), p, short_run(60.0));
  CHECK(run.final_state.population(0) ==
        doctest::Approx(single_site_population(p.delta, p.omega, p.gamma)).epsilon(1e-9));
}

TEST_CASE("uniform start stays uniform and inside the Bloch ball") {
  ChainParams p;
  p.n_sites = 6;
  p.v = 9.0;
  InitialStateSpec init;
  init.stagger = 0.0;
  init.theta0 = 0.3;
  const BlochRun run = evolve_bloch(bloch_initial_state(init, 6), p, short_run(100.0));
  for (const auto& row : run.trajectory.populations) {
    for (int s = 1; s < 6; ++s) CHECK(row[s] == doctest::Approx(row[0]).epsilon(1e-12));
  }
  CHECK(run.max_bloch_norm <= 1.0 + 1e-9);
}

TEST_CASE("Bloch initial state matches the density-matrix one") {
  InitialStateSpec init;
  init.theta0 = 1.0;
  init.stagger = 0.2;
  const BlochState s = bloch_initial_state(init, 4);
  CHECK(s.population(0) == doctest::Approx(std::pow(std::sin(0.4), 2)));
  CHECK(s.population(1) == doctest::Approx(std::pow(std::sin(0.6), 2)));
  CHECK(s.s.col(2).norm() == doctest::Approx(1.0));
}
