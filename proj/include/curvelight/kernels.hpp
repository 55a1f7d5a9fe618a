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

#pragma once

// Data-parallel inner loops of the Crank-Nicolson stepper. Each table holds
// one implementation of every kernel; the scalar table is the reference and
// the others must agree with it to rounding (see tests/unit/kernels_test.cpp).
//
// The Thomas recurrence is sequential and has a single scalar version.

#include <complex>
#include <cstddef>
#include <string_view>

namespace curvelight::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  /// out_j = scale * (w_j + tilt * x_j) + shift - i absorb_j
  /// (absorb may be null, meaning zero).
  void (*assemble_diagonal)(const double* w, const double* x, double tilt, double scale, double shift,
                            const double* absorb, cplx* out, std::size_t n);

  /// out_j = psi_j - i h (diag_j psi_j + off (psi_{j-1} + psi_{j+1})),
  /// psi taken as zero beyond both ends.
  void (*cn_explicit)(const cplx* psi, const cplx* diag, double off, double h, cplx* out, std::size_t n);

  /// out_j = 1 + i h diag_j
  void (*cn_implicit_diagonal)(const cplx* diag, double h, cplx* out, std::size_t n);

  /// sum_j u_j psi_j
  cplx (*dot_real)(const double* u, const cplx* psi, std::size_t n);

  /// sum_j |psi_j|^2
  double (*norm_sq)(const cplx* psi, std::size_t n);

  /// max_j |psi_j|^2
  double (*max_abs_sq)(const cplx* psi, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// Null when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels() noexcept;

/// Best table for this CPU, chosen once. Setting CURVELIGHT_SIMD=scalar in the
/// environment forces the reference table.
const KernelTable& active_kernels() noexcept;

/// Solves the tridiagonal system with diagonal `diag` and constant off-diagonal
/// `off` in place: rhs holds the right-hand side on entry and the solution on
/// exit. `scratch` needs n entries.
void thomas_solve(const cplx* diag, cplx off, cplx* rhs, cplx* scratch, std::size_t n);

}  // namespace curvelight::kernels
