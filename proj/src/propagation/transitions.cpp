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
#include <cmath>
#include <numbers>

#include "curvelight/error.hpp"
#include "curvelight/propagation.hpp"
#include "curvelight/quadrature.hpp"

namespace curvelight {

std::vector<cplx> transition_amplitudes(const ModeBasis& basis, const geometry::BendProfile& bend,
                                        const WaveguideSpec& spec, std::size_t n_max) {
  if (n_max + 1 > basis.size()) {
    throw DomainError("transition amplitudes up to n = " + std::to_string(n_max) + " need " +
                      std::to_string(n_max + 1) + " modes, basis holds " + std::to_string(basis.size()));
  }
  const double n_eff = spec.effective_index(basis.polarization);
  const double k = spec.k();
  const double T = bend.length();
  const QuadratureTolerance tol{1e-14 * T, 1e-10};

  std::vector<cplx> c;
  c.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double omega = k * (basis.modes[n].energy - basis.modes[0].energy);
    auto f = [&](double z) { return bend.at(z).curvature * std::polar(1.0, omega * z); };
    // At least four panels per oscillation, and never fewer than the bend's
    // own panels (tabulated kinks).
    const auto oscillations = static_cast<std::size_t>(std::ceil(std::abs(omega) * T / (2.0 * std::numbers::pi)));
    std::size_t panels = std::max(bend.quadrature_panels(), 4 * oscillations);
    if (const std::size_t base = bend.quadrature_panels(); panels % base != 0) {
      panels += base - panels % base;
    }
    const cplx integral = adaptive_simpson(f, 0.0, T, tol, panels);
    c.push_back(cplx(0.0, -k * n_eff * dipole_element(basis, n, 0)) * integral);
  }
  return c;
}

}  // namespace curvelight
