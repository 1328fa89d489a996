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

#include "dising/kernels.hpp"
#include "dising/model.hpp"
#include "dising/validate.hpp"

using namespace dising;

TEST_CASE("isa names") {
  CHECK(kernels::parse_isa("scalar") == kernels::Isa::kScalar);
  CHECK(kernels::is_available(kernels::parse_isa("auto")));
  CHECK(kernels::to_string(kernels::Isa::kAvx2) == "avx2");
  CHECK_THROWS_AS(kernels::parse_isa("sse9"), ConfigError);
}

TEST_CASE("avx2 kernel reproduces the scalar kernel") {
  if (!kernels::is_available(kernels::Isa::kAvx2)) {
    MESSAGE("avx2 not available on this CPU; skipped");
    return;
  }
  for (int n = 1; n <= 8; ++n) {
    ChainParams p;
    p.n_sites = n;
    p.lambda = 0.3;
    const OperatorCache cache(p);
    const Matrix rho = random_density_matrix(n, 40 + n);
    Matrix a, b;
    RhsEvaluator scalar(p, cache, kernels::Isa::kScalar);
    RhsEvaluator wide(p, cache, kernels::Isa::kAvx2);
    scalar(rho, a);
    wide(rho, b);
    CAPTURE(n);
    CHECK((a - b).norm() <= 1e-14 * a.norm());
    CHECK((b - b.adjoint()).norm() == 0.0);
  }
}
