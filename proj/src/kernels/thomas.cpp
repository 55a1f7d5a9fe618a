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


#include "curvelight/kernels.hpp"

namespace curvelight::kernels {
namespace {

// The pivots are well away from zero and overflow (the system is diagonally
// dominant), so the plain formula is safe and avoids the library call that
// guards std::complex division.
inline cplx reciprocal(cplx m) { return std::conj(m) / std::norm(m); }

}  // namespace

void thomas_solve(const cplx* diag, cplx off, cplx* rhs, cplx* scratch, std::size_t n) {
  // scratch holds the modified super-diagonal c'_j.
  cplx inv = reciprocal(diag[0]);
  scratch[0] = off * inv;
  rhs[0] *= inv;
  for (std::size_t j = 1; j < n; ++j) {
    inv = reciprocal(diag[j] - off * scratch[j - 1]);
    scratch[j] = off * inv;
    rhs[j] = (rhs[j] - off * rhs[j - 1]) * inv;
  }
  for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= scratch[j] * rhs[j + 1];
}

}  // namespace curvelight::kernels
