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


#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>

#include "curvelight/error.hpp"
#include "curvelight/twophoton.hpp"

namespace curvelight::twophoton {

GuidePhases guide_phases(const WaveguideSpec& spec, const geometry::BendProfile& profile) {
  const double k = spec.k();
  const double T = profile.length();
  GuidePhases g;
  g.excess_path = geometry::excess_path(profile);
  const double s = T + g.excess_path;
  g.theta1 = k * (spec.n_s_h * T + spec.n_s_v * s);
  g.theta2 = k * (spec.n_s_v * T + spec.n_s_h * s);
  // theta2 - theta1 = k (n_sH - n_sV)(s - T), formed directly so the ~1e6 rad
  // bulk terms do not cancel in floating point.
  g.delta_phi = k * (spec.n_s_h - spec.n_s_v) * g.excess_path;
  return g;
}

double solve_amplitude_for_phase(const WaveguideSpec& spec, double length, double target) {
  if (!(target > 0.0)) throw DomainError("target phase must be positive");
  if (!(spec.n_s_h != spec.n_s_v)) throw DomainError("no birefringence: the phase difference is always zero");
  auto residual = [&](double a) {
    const double dphi = guide_phases(spec, geometry::BendProfile::sinusoidal(a, length)).delta_phi;
    return std::abs(dphi) - target;
  };
  double hi = 1e-6 * length;
  while (residual(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e3 * length) throw DomainError("target phase is out of reach");
  }
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      residual, 0.0, hi, -target, residual(hi), boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (a + b);
}

}  // namespace curvelight::twophoton
