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


#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "curvelight/error.hpp"
#include "curvelight/propagation.hpp"

namespace curvelight {
namespace {

constexpr double kWrapTolerance = 1e-6;

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// psi(x) -> psi(x - shift) on a periodic extension of the grid.
void spectral_shift(std::vector<cplx>& values, double dx, double shift) {
  const int n = static_cast<int>(values.size());
  auto* data = reinterpret_cast<fftw_complex*>(values.data());
  fftw_plan forward;
  fftw_plan backward;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(forward);
  const double dq = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (int m = 0; m < n; ++m) {
    const int signed_m = m <= n / 2 ? m : m - n;
    double q = dq * signed_m;
    // The Nyquist component has no sign; a real shift keeps it real.
    if (2 * m == n) {
      values[static_cast<std::size_t>(m)] *= std::cos(q * shift) / static_cast<double>(n);
      continue;
    }
    values[static_cast<std::size_t>(m)] *= std::polar(1.0 / static_cast<double>(n), -q * shift);
  }
  fftw_execute(backward);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
}

}  // namespace

ScalarField gauge_map(const ScalarField& field_comoving, const geometry::BendProfile& bend,
                      const WaveguideSpec& spec, double z) {
  if (field_comoving.frame != Frame::Comoving) throw DomainError("gauge_map expects a comoving-frame field");
  const geometry::BendSample b = geometry::eval_bend(bend, z);
  const Grid& g = field_comoving.grid;
  const std::size_t N = g.points;
  const double dx = g.dx();
  const double n_eff = spec.effective_index(field_comoving.polarization);
  const double k = spec.k();

  ScalarField out = field_comoving;
  out.frame = Frame::Lab;
  out.z = z;

  if (b.xi != 0.0) {
    // Samples that the shift carries across an edge (and that the periodic
    // transform would wrap to the other side) must be negligible.
    double peak = 0.0;
    for (const cplx& v : out.values) peak = std::max(peak, std::abs(v));
    const auto cells = static_cast<std::size_t>(std::ceil(std::abs(b.xi) / dx));
    if (cells >= N) throw GridError("gauge shift of " + std::to_string(b.xi) + " m exceeds the grid");
    for (std::size_t i = 0; i <= cells; ++i) {
      const std::size_t j = b.xi > 0.0 ? N - 1 - i : i;
      if (std::abs(out.values[j]) > kWrapTolerance * peak) {
        throw GridError("gauge shift moves the field across the grid boundary");
      }
    }
    spectral_shift(out.values, dx, b.xi);
  }

  const double phase0 = geometry::phi_m(bend, n_eff, k, z);
  const double tilt = k * n_eff * b.slope;
  for (std::size_t j = 0; j < N; ++j) {
    out.values[j] *= std::polar(1.0, tilt * (g.x(j) - b.xi) + phase0);
  }
  return out;
}

}  // namespace curvelight
