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

#include "curvelight/error.hpp"
#include "curvelight/geometry.hpp"
#include "curvelight/quadrature.hpp"

namespace curvelight::geometry {
namespace {

QuadratureTolerance tolerance_for(const BendProfile& profile) {
  return {1e-14 * profile.length(), 1e-10};
}

// Integrates g(xi'(z)) over [0, z] on panels aligned with the profile's own
// panel boundaries, so a partial integral up to T is the full integral.
template <class G>
double integrate_slope(const BendProfile& profile, double z, G g) {
  const double length = profile.length();
  const std::size_t panels = profile.quadrature_panels();
  const double h = length / static_cast<double>(panels);
  const auto whole = static_cast<std::size_t>(std::floor(z / h));
  const double split = std::min(z, static_cast<double>(whole) * h);
  auto f = [&](double s) { return g(profile.at(s).slope); };
  const QuadratureTolerance tol = tolerance_for(profile);
  double total = 0.0;
  if (whole > 0) total += adaptive_simpson(f, 0.0, split, tol, whole);
  if (z > split) total += adaptive_simpson(f, split, z, tol, 1);
  return total;
}

}  // namespace

double partial_excess_path(const BendProfile& profile, double z) {
  if (!(z >= 0.0 && z <= profile.length())) {
    throw DomainError("z lies outside the bend");
  }
  return 0.5 * integrate_slope(profile, z, [](double s) { return s * s; });
}

double excess_path(const BendProfile& profile) {
  return partial_excess_path(profile, profile.length());
}

double arc_length_exact(const BendProfile& profile) {
  // sqrt(1 + s^2) - 1 in a cancellation-free form, so the small gap to the
  // paraxial length survives the sum.
  return profile.length() +
         integrate_slope(profile, profile.length(),
                         [](double s) { return s * s / (std::sqrt(1.0 + s * s) + 1.0); });
}

double phi_m(const BendProfile& profile, double effective_index, double k, double z) {
  if (!(effective_index > 0.0)) throw DomainError("effective index must be positive");
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  return k * effective_index * partial_excess_path(profile, z);
}

double proper_time_defect(const BendProfile& profile, double c) {
  if (!(c > 0.0)) throw DomainError("signal speed must be positive");
  return excess_path(profile) / (c * c);
}

PhaseReport phase_report(const BendProfile& profile, double effective_index, double k, double c) {
  PhaseReport r;
  r.excess_path = excess_path(profile);
  r.arc_length_exact = arc_length_exact(profile);
  r.arc_length_paraxial = profile.length() + r.excess_path;
  r.phi_m = phi_m(profile, effective_index, k, profile.length());
  r.delta_tau_equiv = proper_time_defect(profile, c);
  return r;
}

}  // namespace curvelight::geometry
