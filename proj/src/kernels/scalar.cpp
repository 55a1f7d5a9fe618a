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


#include <algorithm>

#include "curvelight/kernels.hpp"

namespace curvelight::kernels {
namespace {

void assemble_diagonal(const double* w, const double* x, double tilt, double scale, double shift,
                       const double* absorb, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double re = scale * (w[j] + tilt * x[j]) + shift;
    out[j] = cplx(re, absorb ? -absorb[j] : 0.0);
  }
}

void cn_explicit(const cplx* psi, const cplx* diag, double off, double h, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const cplx left = j > 0 ? psi[j - 1] : cplx{};
    const cplx right = j + 1 < n ? psi[j + 1] : cplx{};
    const cplx hpsi = diag[j] * psi[j] + off * (left + right);
    // psi - i h H psi
    out[j] = cplx(psi[j].real() + h * hpsi.imag(), psi[j].imag() - h * hpsi.real());
  }
}

void cn_implicit_diagonal(const cplx* diag, double h, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = cplx(1.0 - h * diag[j].imag(), h * diag[j].real());
}

cplx dot_real(const double* u, const cplx* psi, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += u[j] * psi[j].real();
    im += u[j] * psi[j].imag();
  }
  return {re, im};
}

double norm_sq(const cplx* psi, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += std::norm(psi[j]);
  return s;
}

double max_abs_sq(const cplx* psi, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::norm(psi[j]));
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar", assemble_diagonal, cn_explicit, cn_implicit_diagonal,
                                 dot_real, norm_sq,           max_abs_sq};
  return table;
}

}  // namespace curvelight::kernels
