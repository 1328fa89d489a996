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

// AVX2/FMA variant of rhs_scalar.cpp. One __m256d holds two consecutive
// complex entries of a column; d = 2^N is always even, so columns split into
// whole registers. Must produce the same values as the scalar kernel up to
// FMA rounding.

#include <immintrin.h>

#include <cstddef>

#include "dising/kernels.hpp"

namespace dising::kernels {

namespace {

// (re, im, re, im) -> (im, re, im, re)
inline __m256d swap_re_im(__m256d x) { return _mm256_permute_pd(x, 0b0101); }

}  // namespace

void rhs_avx2(const RhsTerms& terms, const Complex* rho_c, Complex* out_c, Complex* scratch_c) {
  const int n = terms.n_sites;
  const std::size_t d = std::size_t{1} << n;
  const double* rho = reinterpret_cast<const double*>(rho_c);
  double* out = reinterpret_cast<double*>(out_c);
  double* bm = reinterpret_cast<double*>(scratch_c);
  const double half_gamma = 0.5 * terms.gamma;
  const __m256d i_w = _mm256_setr_pd(-terms.half_omega, terms.half_omega, -terms.half_omega,
                                     terms.half_omega);

  for (std::size_t b = 0; b < d; ++b) {
    const __m256d cr = _mm256_set1_pd(-half_gamma * terms.occupation[b]);
    const __m256d ci = _mm256_set1_pd(terms.h_diag[b]);
    const double* col = rho + 2 * b * d;
    double* bcol = bm + 2 * b * d;
    for (std::size_t a = 0; a < 2 * d; a += 4) {
      const __m256d x = _mm256_loadu_pd(col + a);
      __m256d sum = _mm256_setzero_pd();
      for (int s = 0; s < n; ++s) {
        const double* flip = rho + 2 * (b ^ (std::size_t{1} << s)) * d;
        sum = _mm256_add_pd(sum, _mm256_loadu_pd(flip + a));
      }
      // c x = cr x -/+ ci swap(x)
      __m256d acc = _mm256_fmaddsub_pd(cr, x, _mm256_mul_pd(ci, swap_re_im(x)));
      acc = _mm256_fmadd_pd(i_w, swap_re_im(sum), acc);
      _mm256_storeu_pd(bcol + a, acc);
    }
  }

  // out = B + B^dagger over 2x2 complex blocks.
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  for (std::size_t b = 0; b < d; b += 2) {
    for (std::size_t a = 0; a < d; a += 2) {
      const __m256d x0 = _mm256_loadu_pd(bm + 2 * (a + b * d));
      const __m256d x1 = _mm256_loadu_pd(bm + 2 * (a + (b + 1) * d));
      const __m256d y0 = _mm256_loadu_pd(bm + 2 * (b + a * d));
      const __m256d y1 = _mm256_loadu_pd(bm + 2 * (b + (a + 1) * d));
      const __m256d t0 = _mm256_xor_pd(_mm256_permute2f128_pd(y0, y1, 0x20), conj_mask);
      const __m256d t1 = _mm256_xor_pd(_mm256_permute2f128_pd(y0, y1, 0x31), conj_mask);
      _mm256_storeu_pd(out + 2 * (a + b * d), _mm256_add_pd(x0, t0));
      _mm256_storeu_pd(out + 2 * (a + (b + 1) * d), _mm256_add_pd(x1, t1));
    }
  }

  const __m256d g = _mm256_set1_pd(terms.gamma * terms.jump_sign);
  for (int s = 0; s < n; ++s) {
    const std::size_t m = std::size_t{1} << s;
    for (std::size_t b = 0; b < d; ++b) {
      if (b & m) continue;
      const double* src = rho + 2 * (b | m) * d;
      double* dst = out + 2 * b * d;
      if (m == 1) {
        // Rows (a, a+1) share a register: only the even row receives src[a+1].
        for (std::size_t a = 0; a < 2 * d; a += 4) {
          const __m256d v = _mm256_loadu_pd(src + a);
          const __m256d shifted = _mm256_permute2f128_pd(v, v, 0x81);
          _mm256_storeu_pd(dst + a, _mm256_fmadd_pd(g, shifted, _mm256_loadu_pd(dst + a)));
        }
        continue;
      }
      for (std::size_t block = 0; block < d; block += 2 * m) {
        for (std::size_t a = block; a < block + m; a += 2) {
          const __m256d v = _mm256_loadu_pd(src + 2 * (a + m));
          _mm256_storeu_pd(dst + 2 * a, _mm256_fmadd_pd(g, v, _mm256_loadu_pd(dst + 2 * a)));
        }
      }
    }
  }
}

}  // namespace dising::kernels
