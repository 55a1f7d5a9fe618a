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

// Ground-state energy of a 1D well by Numerov integration and bisection on
// the node count. Written independently of the library's finite-difference
// eigensolver; shares nothing with it but the physical constants.

#include <cmath>
#include <functional>

namespace oracle {

struct ShootingProblem {
  std::function<double(double)> potential;  // W(x), index units
  double mass_factor = 0.0;                 // 2 n k^2
  double x_min = 0.0;                       // Dirichlet walls
  double x_max = 0.0;
  long intervals = 400000;
};

// Integrates u'' = M (W - E) u from x_min with u = 0 and returns the number of
// interior sign changes and the sign of u(x_max).
inline std::pair<int, double> shoot(const ShootingProblem& p, double energy) {
  const double h = (p.x_max - p.x_min) / static_cast<double>(p.intervals);
  const double h2 = h * h / 12.0;
  auto g = [&](double x) { return p.mass_factor * (p.potential(x) - energy); };
  double u_prev = 0.0;
  double u = 1e-30;
  double g_prev = g(p.x_min);
  double g_cur = g(p.x_min + h);
  int nodes = 0;
  for (long i = 1; i < p.intervals; ++i) {
    const double x_next = p.x_min + static_cast<double>(i + 1) * h;
    const double g_next = g(x_next);
    const double u_next =
        (2.0 * u * (1.0 + 5.0 * h2 * g_cur) - u_prev * (1.0 - h2 * g_prev)) / (1.0 - h2 * g_next);
    if (i + 1 < p.intervals && ((u_next < 0.0) != (u < 0.0)) && u_next != 0.0) ++nodes;
    u_prev = u;
    u = u_next;
    g_prev = g_cur;
    g_cur = g_next;
    // Keep the magnitude in range; only signs matter.
    if (std::abs(u) > 1e200) {
      u *= 1e-200;
      u_prev *= 1e-200;
    }
  }
  return {nodes, u};
}

// Ground state: the lowest E at which u(x_max) changes sign with no
// interior node.
inline double ground_energy(const ShootingProblem& p, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto [nodes, end] = shoot(p, mid);
    if (nodes == 0 && end > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::abs(mid)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
