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

#include <bit>

#include "dising/model.hpp"
#include "dising/validate.hpp"

using namespace dising;

namespace {

ChainParams chain(int n, double lambda) {
  ChainParams p;
  p.n_sites = n;
  p.lambda = lambda;
  return p;
}

// Cyclic translation s -> s + 1 of every basis index.
Matrix shift_sites(const Matrix& rho, int n) {
  const std::size_t d = rho.rows();
  const std::size_t mask = d - 1;
  auto rot = [&](std::size_t b) { return ((b << 1) | (b >> (n - 1))) & mask; };
  Matrix out(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) out(rot(a), rot(b)) = rho(a, b);
  }
  return out;
}

}  // namespace

TEST_CASE("two-site effective Hamiltonian by hand") {
  // lambda = 0.5, V = 5, Delta = 2, Omega = 1.5, m = (1, 0). With periodic
  // boundaries both bonds join sites 0 and 1; each mean-field bond
  // contributes n_1, so H_eff = -2(n_0 + n_1) + 5 n_0 n_1 + 5 n_1 + 0.75 sum sigma^x.
  const ChainParams p = chain(2, 0.5);
  const OperatorCache cache(p);
  MeanFields f{RealVector(2)};
  f.m << 1.0, 0.0;
  const Matrix h = effective_hamiltonian(p, cache, f);
  const double diag[] = {0.0, -2.0, 3.0, 6.0};
  for (int b = 0; b < 4; ++b) CHECK(h(b, b).real() == doctest::Approx(diag[b]));
  CHECK(h(0, 1).real() == doctest::Approx(0.75));
  CHECK(h(0, 2).real() == doctest::Approx(0.75));
  CHECK(std::abs(h(0, 3)) == 0.0);
  CHECK((h - h.adjoint()).norm() == 0.0);
}

TEST_CASE("effective Hamiltonian is affine in each mean field") {
  const ChainParams p = chain(4, 0.3);
  const OperatorCache cache(p);
  MeanFields f{RealVector(4)};
  f.m << 0.2, 0.6, 0.1, 0.4;
  const Matrix h0 = effective_hamiltonian(p, cache, f);
  for (int i = 0; i < 4; ++i) {
    MeanFields a = f, b = f;
    a.m[i] += 0.1;
    b.m[i] += 0.2;
    const Matrix d1 = effective_hamiltonian(p, cache, a) - h0;
    const Matrix d2 = effective_hamiltonian(p, cache, b) - h0;
    CHECK((d2 - 2.0 * d1).norm() < 1e-12);
    // slope: (1 - lambda) V (n_{i-1} + n_{i+1} - (m_{i-1} + m_{i+1}))
    const int l = (i + 3) % 4, r = (i + 1) % 4;
    const Matrix slope = (1.0 - p.lambda) * p.v *
                         (cache.number(l) + cache.number(r) -
                          (f.m[l] + f.m[r]) * Matrix::Identity(16, 16));
    CHECK((d1 - 0.1 * slope).norm() < 1e-12);
  }
}

TEST_CASE("structured generator matches the dense reference") {
  for (int n : {1, 2, 3, 4, 6}) {
    for (double lambda : {0.0, 0.37, 1.0}) {
      const ChainParams p = chain(n, lambda);
      const OperatorCache cache(p);
      const Matrix rho = random_density_matrix(n, 7 + n);
      const Matrix ref = lindblad_rhs_reference(rho, p, cache);
      CHECK((lindblad_rhs(rho, p, cache) - ref).norm() <= 1e-13 * ref.norm());
    }
  }
}

TEST_CASE("generator preserves trace and Hermiticity") {
  const ChainParams p = chain(5, 0.6);
  const OperatorCache cache(p);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Matrix out = lindblad_rhs(random_density_matrix(5, seed), p, cache);
    CHECK(std::abs(out.trace()) < 1e-13);
    CHECK((out - out.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("generator commutes with translations") {
  const ChainParams p = chain(4, 0.45);
  const OperatorCache cache(p);
  const Matrix rho = random_density_matrix(4, 3);
  const Matrix a = lindblad_rhs(shift_sites(rho, 4), p, cache);
  const Matrix b = shift_sites(lindblad_rhs(rho, p, cache), 4);
  CHECK((a - b).norm() < 1e-13);
}

TEST_CASE("sign mutation breaks trace conservation") {
  const ChainParams p = chain(3, 0.5);
  const OperatorCache cache(p);
  RhsEvaluator eval(p, cache);
  eval.inject_dissipator_sign_error(true);
  Matrix out;
  eval(random_density_matrix(3, 1), out);
  CHECK(std::abs(out.trace()) > 0.1);
}

TEST_CASE("mean fields reject non-Hermitian states") {
  const ChainParams p = chain(2, 0.5);
  const OperatorCache cache(p);
  Matrix rho = random_density_matrix(2, 4);
  CHECK(mean_fields(rho, cache).m.size() == 2);
  rho(1, 1) += Complex(0.0, 1e-3);
  CHECK_THROWS_AS(mean_fields(rho, cache), NumericalError);
}

TEST_CASE("partition ensembles average to the interpolated Hamiltonian") {
  ChainParams p = chain(4, 0.5);
  const OperatorCache cache(p);
  MeanFields f{RealVector(4)};
  f.m << 0.3, 0.7, 0.2, 0.5;

  SUBCASE("uniform") {
    const auto P = PartitionDistribution::uniform(4);
    CHECK(P.quantum_weight(2) == doctest::Approx(0.5));
    CHECK((ensemble_hamiltonian(P, cache, f) - effective_hamiltonian(p, cache, f)).norm() < 1e-12);
  }
  SUBCASE("alternating support") {
    const auto P = PartitionDistribution::alternating(4);
    CHECK(P.is_translation_invariant());
    CHECK((ensemble_hamiltonian(P, cache, f) - effective_hamiltonian(p, cache, f)).norm() < 1e-12);
  }
  SUBCASE("bernoulli") {
    for (double q : {0.0, 0.25, 1.0}) {
      p.lambda = 1.0 - q;
      const auto P = PartitionDistribution::bernoulli(4, q);
      CHECK((ensemble_hamiltonian(P, cache, f) - effective_hamiltonian(p, cache, f)).norm() <
            1e-12);
    }
  }
  SUBCASE("rejects non-invariant or unnormalized P") {
    CHECK_THROWS_AS(ensemble_hamiltonian(PartitionDistribution::point(4, 0b0001), cache, f),
                    ConfigError);
    PartitionDistribution half(4);
    half[0] = 0.5;
    CHECK_THROWS_AS(ensemble_hamiltonian(half, cache, f), ConfigError);
  }
}

TEST_CASE("translation of a bond subset") {
  const auto P = PartitionDistribution::uniform(6);
  CHECK(P.shifted(0b100000) == 0b000001);
  CHECK(P.shifted(0b000011) == 0b000110);
  CHECK(std::popcount(P.shifted(0b101010)) == 3);
}
