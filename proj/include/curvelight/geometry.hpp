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

#include <cstddef>
#include <filesystem>
#include <variant>
#include <vector>

namespace curvelight::geometry {

/// Speed of light in vacuum, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

/// Displacement of the waveguide axis and its first two z-derivatives.
struct BendSample {
  double xi = 0.0;         // m
  double slope = 0.0;      // dxi/dz, dimensionless
  double curvature = 0.0;  // d2xi/dz2, 1/m
};

/// xi(z) = A [1 - cos(2 pi z / T)]
struct SinusoidalBend {
  double amplitude = 0.0;
  double length = 0.0;
  bool operator==(const SinusoidalBend&) const = default;
};

struct StraightBend {
  double length = 0.0;
  bool operator==(const StraightBend&) const = default;
};

/// Samples of xi at uniform z = j T / (n - 1). Derivatives come from
/// second-order finite differences (one-sided at the ends) and every
/// quantity is linearly interpolated between samples.
struct TabulatedBend {
  std::vector<double> xi;
  double length = 0.0;
  bool operator==(const TabulatedBend& other) const {
    return xi == other.xi && length == other.length;
  }
};

using BendShape = std::variant<SinusoidalBend, StraightBend, TabulatedBend>;

/// Trajectory xi(z) of a curved waveguide axis on [0, T]. Every profile is a
/// closed circuit: xi and dxi/dz vanish at both ends.
class BendProfile {
 public:
  static constexpr std::size_t kMinTabulatedSamples = 16;

  static BendProfile sinusoidal(double amplitude, double length);
  static BendProfile straight(double length);
  static BendProfile tabulated(std::vector<double> xi, double length);

  const BendShape& shape() const noexcept { return shape_; }
  double length() const noexcept { return length_; }

  /// Evaluates without the domain check; z is clamped to [0, T].
  BendSample at(double z) const;

  double min_displacement() const noexcept { return min_xi_; }
  double max_displacement() const noexcept { return max_xi_; }
  double max_abs_slope() const noexcept { return max_slope_; }

  /// Number of equal panels that puts quadrature nodes on every kink of the
  /// interpolated derivatives (tabulated) or resolves one period (analytic).
  std::size_t quadrature_panels() const noexcept;

  /// Same shape with the displacement multiplied by `factor`.
  BendProfile scaled(double factor) const;

  bool operator==(const BendProfile& other) const { return shape_ == other.shape_; }

 private:
  explicit BendProfile(BendShape shape);

  BendShape shape_;
  double length_ = 0.0;
  double min_xi_ = 0.0;
  double max_xi_ = 0.0;
  double max_slope_ = 0.0;
  std::vector<double> slope_;      // tabulated only
  std::vector<double> curvature_;  // tabulated only
};

/// Reads a two-column CSV (z, xi) in meters with uniform z starting at 0.
BendProfile load_bend_csv(const std::filesystem::path& path);

/// xi, dxi/dz and d2xi/dz2 at z. Throws DomainError for z outside [0, T].
BendSample eval_bend(const BendProfile& profile, double z);

/// (1/2) int_0^z xi'^2, the paraxial excess path accumulated up to z.
double partial_excess_path(const BendProfile& profile, double z);

/// s - T = (1/2) int_0^T xi'^2.
double excess_path(const BendProfile& profile);

/// int_0^T sqrt(1 + xi'^2), without the paraxial truncation. Diagnostic only;
/// downstream phases use the paraxial excess path.
double arc_length_exact(const BendProfile& profile);

/// Gauge phase k n (1/2) int_0^z xi'^2 for a mode of effective index n.
double phi_m(const BendProfile& profile, double effective_index, double k, double z);

/// Mechanical-analog proper-time defect (1/(2 c^2)) int_0^T xi'^2 with z read
/// as time.
double proper_time_defect(const BendProfile& profile, double c = kSpeedOfLight);

struct PhaseReport {
  double excess_path = 0.0;          // s - T, m
  double arc_length_exact = 0.0;     // m
  double arc_length_paraxial = 0.0;  // T + excess_path, m
  double phi_m = 0.0;                // rad
  double delta_tau_equiv = 0.0;      // s
};

PhaseReport phase_report(const BendProfile& profile, double effective_index, double k,
                         double c = kSpeedOfLight);

}  // namespace curvelight::geometry
