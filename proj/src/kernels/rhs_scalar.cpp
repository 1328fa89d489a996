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

// Reference implementation of the structured Lindblad generator.
//
// With H = diag(h) + w sum_s X_s and N = sum_s n_s, define
//   B = i rho H - (gamma/2) rho N.
// For Hermitian rho, B^dagger = -i H rho - (gamma/2) N rho, so
//   rhs = B + B^dagger + gamma sum_s sigma^-_s rho sigma^+_s.
// Column b of rho H is h[b] rho[:, b] + w sum_s rho[:, b ^ (1 << s)], so every
// term is a whole-column operation on column-major storage.

#include <cstddef>

#include "dising/kernels.hpp"

namespace dising::kernels {

void rhs_scalar(const RhsTerms& terms, const Complex* rho_c, Complex* out_c, Complex* scratch_c) {
  const int n = terms.n_sites;
  const std::size_t d = std::size_t{1} << n;
  const double* rho = reinterpret_cast<const double*>(rho_c);
  double* out = reinterpret_cast<double*>(out_c);
  double* bm = reinterpret_cast<double*>(scratch_c);
  const double w = terms.half_omega;
  const double half_gamma = 0.5 * terms.gamma;

  for (std::size_t b = 0; b < d; ++b) {
    const double cr = -half_gamma * terms.occupation[b];
    const double ci = terms.h_diag[b];
    const double* col = rho + 2 * b * d;
    double* bcol = bm + 2 * b * d;
    for (std::size_t a = 0; a < d; ++a) {
      const double xr = col[2 * a];
      const double xi = col[2 * a + 1];
      bcol[2 * a] = cr * xr - ci * xi;
      bcol[2 * a + 1] = cr * xi + ci * xr;
    }
    for (int s = 0; s < n; ++s) {
      const double* flip = rho + 2 * (b ^ (std::size_t{1} << s)) * d;
      for (std::size_t a = 0; a < d; ++a) {
        // i w x = (-w xi, w xr)
        bcol[2 * a] -= w * flip[2 * a + 1];
        bcol[2 * a + 1] += w * flip[2 * a];
      }
    }
  }

  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t a = 0; a <= b; ++a) {
      const std::size_t ab = 2 * (a + b * d);
      const std::size_t ba = 2 * (b + a * d);
      const double re = bm[ab] + bm[ba];
      const double im = bm[ab + 1] - bm[ba + 1];
      out[ab] = re;
      out[ab + 1] = im;
      out[ba] = re;
      out[ba + 1] = -im;
    }
  }

  const double g = terms.gamma * terms.jump_sign;
  for (int s = 0; s < n; ++s) {
    const std::size_t m = std::size_t{1} << s;
    for (std::size_t b = 0; b < d; ++b) {
      if (b & m) continue;
      const double* src = rho + 2 * (b | m) * d;
      double* dst = out + 2 * b * d;
      for (std::size_t a = 0; a < d; ++a) {
        if (a & m) continue;
        dst[2 * a] += g * src[2 * (a | m)];
        dst[2 * a + 1] += g * src[2 * (a | m) + 1];
      }
    }
  }
}

}  // namespace dising::kernels
