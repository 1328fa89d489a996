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

#pragma once

#include <string>
#include <string_view>

#include "dising/types.hpp"

/// Inner loops of the Lindblad generator. All variants compute the same
/// function and are checked against each other in the test suite; the
/// scalar one is the reference.
namespace dising::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);
/// Parses "scalar", "avx2", or "auto" (best available).
Isa parse_isa(std::string_view name);

bool is_available(Isa isa);
Isa best_available();

/// Process-wide default. Starts as best_available(), or the value of the
/// DISING_KERNEL environment variable if set.
Isa active_isa();
void set_active_isa(Isa isa);

/// Diagonal-plus-transverse generator data.
///   H = diag(h_diag) + half_omega * sum_s sigma^x_s
///   jumps L_s = sigma^-_s at rate gamma
/// `occupation[b]` is the popcount of basis index b.
struct RhsTerms {
  int n_sites;
  double half_omega;
  double gamma;
  const double* h_diag;
  const double* occupation;
  /// +1 normally; -1 flips the jump term (mutation-testing hook).
  double jump_sign = 1.0;
};

/// Column-major d x d matrices, d = 2^n_sites. `rho` must be Hermitian.
/// `scratch` holds d*d elements. out = -i[H, rho] + D[rho].
void rhs_scalar(const RhsTerms& terms, const Complex* rho, Complex* out, Complex* scratch);
#if defined(DISING_HAVE_AVX2_KERNEL)
void rhs_avx2(const RhsTerms& terms, const Complex* rho, Complex* out, Complex* scratch);
#endif

void apply_rhs(Isa isa, const RhsTerms& terms, const Complex* rho, Complex* out,
               Complex* scratch);

}  // namespace dising::kernels
