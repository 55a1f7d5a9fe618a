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
#include <string>
#include <utility>

#include "curvelight/csv.hpp"
#include "curvelight/error.hpp"
#include "curvelight/geometry.hpp"

namespace curvelight::geometry {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Panels per period for the analytic shapes; keeps the first Simpson
// estimate away from the symmetric points where xi' vanishes.
constexpr std::size_t kAnalyticPanels = 8;

void require_length(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("bend length must be positive and finite");
  }
}

struct Derivatives {
  std::vector<double> slope;
  std::vector<double> curvature;
};

// Second-order differences: centered inside, one-sided at both ends.
Derivatives differentiate(const std::vector<double>& xi, double h) {
  const std::size_t n = xi.size();
  Derivatives d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 1; j + 1 < n; ++j) {
    d.slope[j] = (xi[j + 1] - xi[j - 1]) / (2.0 * h);
    d.curvature[j] = (xi[j + 1] - 2.0 * xi[j] + xi[j - 1]) / (h * h);
  }
  d.slope[0] = (-3.0 * xi[0] + 4.0 * xi[1] - xi[2]) / (2.0 * h);
  d.slope[n - 1] = (3.0 * xi[n - 1] - 4.0 * xi[n - 2] + xi[n - 3]) / (2.0 * h);
  d.curvature[0] = (2.0 * xi[0] - 5.0 * xi[1] + 4.0 * xi[2] - xi[3]) / (h * h);
  d.curvature[n - 1] = (2.0 * xi[n - 1] - 5.0 * xi[n - 2] + 4.0 * xi[n - 3] - xi[n - 4]) / (h * h);
  return d;
}

double lerp_table(const std::vector<double>& v, double u) {
  // u is the fractional sample index, already clamped to [0, n-1].
  const std::size_t last = v.size() - 1;
  std::size_t j = static_cast<std::size_t>(u);
  if (j >= last) return v[last];
  const double t = u - static_cast<double>(j);
  return v[j] + t * (v[j + 1] - v[j]);
}

}  // namespace

BendProfile::BendProfile(BendShape shape) : shape_(std::move(shape)) {
  if (const auto* s = std::get_if<SinusoidalBend>(&shape_)) {
    require_length(s->length);
    if (!std::isfinite(s->amplitude)) throw DomainError("bend amplitude must be finite");
    length_ = s->length;
    min_xi_ = std::min(0.0, 2.0 * s->amplitude);
    max_xi_ = std::max(0.0, 2.0 * s->amplitude);
    max_slope_ = std::abs(s->amplitude) * kTwoPi / s->length;
  } else if (const auto* s = std::get_if<StraightBend>(&shape_)) {
    require_length(s->length);
    length_ = s->length;
  } else {
    const auto& t = std::get<TabulatedBend>(shape_);
    require_length(t.length);
    length_ = t.length;
    const std::size_t n = t.xi.size();
    if (n < kMinTabulatedSamples) {
      throw DomainError("tabulated bend needs at least " + std::to_string(kMinTabulatedSamples) +
                        " samples, got " + std::to_string(n));
    }
    double scale = 0.0;
    for (double v : t.xi) {
      if (!std::isfinite(v)) throw DomainError("tabulated bend has a non-finite sample");
      scale = std::max(scale, std::abs(v));
    }
    const double h = length_ / static_cast<double>(n - 1);
    Derivatives d = differentiate(t.xi, h);

    // Closed-circuit check. The endpoint slopes are one-sided differences, so
    // they carry an O(h^2 xi''') truncation error on top of the round-off
    // floor; the third difference bounds it.
    const double xi_tol = 1e-12 * scale;
    if (std::abs(t.xi.front()) > xi_tol || std::abs(t.xi.back()) > xi_tol) {
      throw DomainError("tabulated bend must start and end on the axis: xi(0) = xi(T) = 0");
    }
    double third = 0.0;
    for (std::size_t j = 0; j + 3 < n; ++j) {
      third = std::max(third, std::abs(t.xi[j + 3] - 3.0 * t.xi[j + 2] + 3.0 * t.xi[j + 1] - t.xi[j]));
    }
    const double slope_tol = 1e-12 * scale / length_ + third / h;
    if (std::abs(d.slope.front()) > slope_tol || std::abs(d.slope.back()) > slope_tol) {
      throw DomainError("tabulated bend must leave and rejoin the axis tangentially: xi'(0) = xi'(T) = 0");
    }

    min_xi_ = *std::min_element(t.xi.begin(), t.xi.end());
    max_xi_ = *std::max_element(t.xi.begin(), t.xi.end());
    for (double s : d.slope) max_slope_ = std::max(max_slope_, std::abs(s));
    slope_ = std::move(d.slope);
    curvature_ = std::move(d.curvature);
  }
}

BendProfile BendProfile::sinusoidal(double amplitude, double length) {
  return BendProfile(SinusoidalBend{amplitude, length});
}

BendProfile BendProfile::straight(double length) { return BendProfile(StraightBend{length}); }

BendProfile BendProfile::tabulated(std::vector<double> xi, double length) {
  return BendProfile(TabulatedBend{std::move(xi), length});
}

BendSample BendProfile::at(double z) const {
  z = std::clamp(z, 0.0, length_);
  if (const auto* s = std::get_if<SinusoidalBend>(&shape_)) {
    const double q = kTwoPi / s->length;
    const double c = std::cos(q * z);
    return {s->amplitude * (1.0 - c), s->amplitude * q * std::sin(q * z), s->amplitude * q * q * c};
  }
  if (std::holds_alternative<StraightBend>(shape_)) return {};
  const auto& t = std::get<TabulatedBend>(shape_);
  const double u = z / length_ * static_cast<double>(t.xi.size() - 1);
  return {lerp_table(t.xi, u), lerp_table(slope_, u), lerp_table(curvature_, u)};
}

std::size_t BendProfile::quadrature_panels() const noexcept {
  if (const auto* t = std::get_if<TabulatedBend>(&shape_)) return t->xi.size() - 1;
  return kAnalyticPanels;
}

BendProfile BendProfile::scaled(double factor) const {
  if (const auto* s = std::get_if<SinusoidalBend>(&shape_)) {
    return sinusoidal(s->amplitude * factor, s->length);
  }
  if (std::holds_alternative<StraightBend>(shape_)) return *this;
  auto xi = std::get<TabulatedBend>(shape_).xi;
  for (double& v : xi) v *= factor;
  return tabulated(std::move(xi), length_);
}

BendSample eval_bend(const BendProfile& profile, double z) {
  if (!(z >= 0.0 && z <= profile.length())) {
    throw DomainError("z = " + std::to_string(z) + " m lies outside the bend [0, " +
                      std::to_string(profile.length()) + "] m");
  }
  return profile.at(z);
}

BendProfile load_bend_csv(const std::filesystem::path& path) {
  const auto rows = io::read_numeric_csv(path, 2);
  if (rows.size() < BendProfile::kMinTabulatedSamples) {
    throw DomainError(path.string() + ": tabulated bend needs at least " +
                      std::to_string(BendProfile::kMinTabulatedSamples) + " samples");
  }
  const double length = rows.back()[0];
  const double h = length / static_cast<double>(rows.size() - 1);
  std::vector<double> xi;
  xi.reserve(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (std::abs(rows[j][0] - static_cast<double>(j) * h) > 1e-9 * h) {
      throw DomainError(path.string() + ": z must start at 0 and be uniformly spaced");
    }
    xi.push_back(rows[j][1]);
  }
  return BendProfile::tabulated(std::move(xi), length);
}

}  // namespace curvelight::geometry
