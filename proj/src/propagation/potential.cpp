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
#include "curvelight/propagation.hpp"

namespace curvelight {

std::string_view to_string(Frame f) noexcept { return f == Frame::Lab ? "lab" : "comoving"; }

double AbsorberSpec::rate(double x_prime) const noexcept {
  const double r = std::clamp((std::abs(x_prime) - start) / width, 0.0, 1.0);
  return strength * r * r;
}

std::vector<double> potential_samples(const PotentialSpec& potential, Polarization polarization,
                                      const Grid& grid, double z) {
  const geometry::BendSample b = geometry::eval_bend(potential.bend, z);
  const double n = potential.waveguide.effective_index(polarization);
  std::vector<double> v(grid.points);
  for (std::size_t j = 0; j < grid.points; ++j) {
    const double x = grid.x(j);
    v[j] = potential.frame == Frame::Lab ? potential.waveguide.potential(x - b.xi)
                                         : potential.waveguide.potential(x) + n * b.curvature * x;
  }
  return v;
}

}  // namespace curvelight
