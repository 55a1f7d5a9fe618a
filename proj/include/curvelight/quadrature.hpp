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

// Adaptive Simpson quadrature shared by the geometric integrals and the
// first-order transition amplitudes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

namespace curvelight {

struct QuadratureTolerance {
  double absolute = 0.0;
  double relative = 1e-10;
};

namespace detail {

inline constexpr int kMaxSimpsonDepth = 48;

template <class F, class R>
R simpson_refine(F& f, double a, double b, R fa, R fm, R fb, R whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const R flm = f(lm);
  const R frm = f(rm);
  const R left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const R right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const R delta = left + right - whole;
  if (depth >= kMaxSimpsonDepth || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
         simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

}  // namespace detail

/// Integrates f over [a, b]. The interval is first cut into `initial_panels`
/// equal panels (use this to align with tabulated kinks or to resolve
/// oscillations), then each panel is refined until the Richardson error
/// estimate meets max(absolute, relative * integral of |f|), shared out in
/// proportion to panel length.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, const QuadratureTolerance& tol,
                      std::size_t initial_panels = 1) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  if (b == a) return R{};
  initial_panels = std::max<std::size_t>(initial_panels, 1);

  struct Panel {
    double a, b;
    R fa, fm, fb, whole;
  };
  std::vector<Panel> panels;
  panels.reserve(initial_panels);
  const double h = (b - a) / static_cast<double>(initial_panels);
  double magnitude = 0.0;
  R fa = f(a);
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double pa = a + static_cast<double>(i) * h;
    const double pb = (i + 1 == initial_panels) ? b : a + static_cast<double>(i + 1) * h;
    const R fm = f(0.5 * (pa + pb));
    const R fb = f(pb);
    const R whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    magnitude += std::abs(pb - pa) / 6.0 * (std::abs(fa) + 4.0 * std::abs(fm) + std::abs(fb));
    panels.push_back({pa, pb, fa, fm, fb, whole});
    fa = fb;
  }

  const double target = std::max(tol.absolute, tol.relative * magnitude);
  R total{};
  for (const Panel& p : panels) {
    const double share = target * (p.b - p.a) / (b - a);
    total += detail::simpson_refine(f, p.a, p.b, p.fa, p.fm, p.fb, p.whole, std::abs(share), 0);
  }
  return total;
}

}  // namespace curvelight
