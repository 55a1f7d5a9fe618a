// Copyright 2026 The curvelight Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// AVX2 + FMA versions of the stepper kernels. This translation unit is the
// only one compiled with -mavx2 -mfma; nothing here runs unless dispatch has
// confirmed CPU support.

#include <immintrin.h>

#include <algorithm>

#include "curvelight/kernels.hpp"

namespace curvelight::kernels {
namespace {

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

// Two interleaved complex products.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

void assemble_diagonal(const double* w, const double* x, double tilt, double scale, double shift,
                       const double* absorb, cplx* out, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(tilt);
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vb = _mm256_set1_pd(shift);
  const __m256d zero = _mm256_setzero_pd();
  double* o = raw(out);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d re = _mm256_fmadd_pd(vs, _mm256_fmadd_pd(vt, _mm256_loadu_pd(x + j), _mm256_loadu_pd(w + j)), vb);
    const __m256d im = absorb ? _mm256_sub_pd(zero, _mm256_loadu_pd(absorb + j)) : zero;
    const __m256d lo = _mm256_unpacklo_pd(re, im);  // r0 i0 r2 i2
    const __m256d hi = _mm256_unpackhi_pd(re, im);  // r1 i1 r3 i3
    _mm256_storeu_pd(o + 2 * j, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(o + 2 * j + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
  }
  if (j < n) scalar_kernels().assemble_diagonal(w + j, x + j, tilt, scale, shift, absorb ? absorb + j : nullptr,
                                                out + j, n - j);
}

inline cplx explicit_point(const cplx* psi, const cplx* diag, double off, double h, std::size_t j,
                           std::size_t n) {
  const cplx left = j > 0 ? psi[j - 1] : cplx{};
  const cplx right = j + 1 < n ? psi[j + 1] : cplx{};
  const cplx hpsi = diag[j] * psi[j] + off * (left + right);
  return {psi[j].real() + h * hpsi.imag(), psi[j].imag() - h * hpsi.real()};
}

void cn_explicit(const cplx* psi, const cplx* diag, double off, double h, cplx* out, std::size_t n) {
  if (n < 4) {
    scalar_kernels().cn_explicit(psi, diag, off, h, out, n);
    return;
  }
  const __m256d voff = _mm256_set1_pd(off);
  const __m256d vh = _mm256_setr_pd(h, -h, h, -h);
  const double* p = raw(psi);
  const double* d = raw(diag);
  double* o = raw(out);
  out[0] = explicit_point(psi, diag, off, h, 0, n);
  std::size_t j = 1;
  for (; j + 2 < n; j += 2) {
    const __m256d c = _mm256_loadu_pd(p + 2 * j);
    const __m256d l = _mm256_loadu_pd(p + 2 * j - 2);
    const __m256d r = _mm256_loadu_pd(p + 2 * j + 2);
    const __m256d hp = _mm256_fmadd_pd(voff, _mm256_add_pd(l, r), cmul(_mm256_loadu_pd(d + 2 * j), c));
    // psi - i h (hr + i hi) = psi + h (hi, -hr)
    _mm256_storeu_pd(o + 2 * j, _mm256_fmadd_pd(vh, _mm256_permute_pd(hp, 0x5), c));
  }
  for (; j < n; ++j) out[j] = explicit_point(psi, diag, off, h, j, n);
}

void cn_implicit_diagonal(const cplx* diag, double h, cplx* out, std::size_t n) {
  const __m256d vh = _mm256_setr_pd(-h, h, -h, h);
  const __m256d one = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
  const double* d = raw(diag);
  double* o = raw(out);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    _mm256_storeu_pd(o + 2 * j, _mm256_fmadd_pd(vh, _mm256_permute_pd(_mm256_loadu_pd(d + 2 * j), 0x5), one));
  }
  if (j < n) scalar_kernels().cn_implicit_diagonal(diag + j, h, out + j, n - j);
}

cplx dot_real(const double* u, const cplx* psi, std::size_t n) {
  const double* p = raw(psi);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d uu = _mm256_loadu_pd(u + j);                    // u0 u1 u2 u3
    const __m256d lo = _mm256_permute4x64_pd(uu, 0x50);           // u0 u0 u1 u1
    const __m256d hi = _mm256_permute4x64_pd(uu, 0xFA);           // u2 u2 u3 u3
    acc0 = _mm256_fmadd_pd(lo, _mm256_loadu_pd(p + 2 * j), acc0);
    acc1 = _mm256_fmadd_pd(hi, _mm256_loadu_pd(p + 2 * j + 4), acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  cplx s(lanes[0] + lanes[2], lanes[1] + lanes[3]);
  if (j < n) s += scalar_kernels().dot_real(u + j, psi + j, n - j);
  return s;
}

double norm_sq(const cplx* psi, std::size_t n) {
  const double* p = raw(psi);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_loadu_pd(p + 2 * j);
    const __m256d b = _mm256_loadu_pd(p + 2 * j + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  if (j < n) s += scalar_kernels().norm_sq(psi + j, n - j);
  return s;
}

double max_abs_sq(const cplx* psi, std::size_t n) {
  const double* p = raw(psi);
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = _mm256_loadu_pd(p + 2 * j);
    const __m256d sq = _mm256_mul_pd(a, a);
    m = _mm256_max_pd(m, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(lanes[0], lanes[2]);
  if (j < n) r = std::max(r, scalar_kernels().max_abs_sq(psi + j, n - j));
  return r;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{"avx2", assemble_diagonal, cn_explicit, cn_implicit_diagonal,
                                 dot_real, norm_sq, max_abs_sq};
  return table;
}

}  // namespace curvelight::kernels
