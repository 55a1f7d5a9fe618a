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

#include "curvelight/csv.hpp"
#include "curvelight/error.hpp"
#include "curvelight/grid.hpp"
#include "curvelight/waveguide.hpp"

namespace curvelight {

std::vector<double> Grid::coordinates() const {
  std::vector<double> x(points);
  for (std::size_t j = 0; j < points; ++j) x[j] = this->x(j);
  return x;
}

void Grid::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max)) {
    throw GridError("grid needs x_min < x_max");
  }
  if (points < 3) throw GridError("grid needs at least 3 points");
}

std::string_view to_string(Polarization p) noexcept { return p == Polarization::H ? "H" : "V"; }

Polarization other(Polarization p) noexcept {
  return p == Polarization::H ? Polarization::V : Polarization::H;
}

double WaveguideSpec::k() const noexcept { return 2.0 * std::numbers::pi / wavelength; }

double WaveguideSpec::potential(double x) const noexcept {
  if (const auto* g = std::get_if<GaussianIndex>(&index)) {
    const double u = x / g->width;
    return -g->delta_n * std::exp(-u * u);
  }
  const auto& t = std::get<TabulatedIndex>(index);
  if (x <= t.x.front()) return -t.contrast.front();
  if (x >= t.x.back()) return -t.contrast.back();
  const auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - t.x.begin()) - 1;
  const double s = (x - t.x[j]) / (t.x[j + 1] - t.x[j]);
  return -(t.contrast[j] + s * (t.contrast[j + 1] - t.contrast[j]));
}

double WaveguideSpec::core_extent() const noexcept {
  if (const auto* g = std::get_if<GaussianIndex>(&index)) return 10.0 * g->width;
  const auto& t = std::get<TabulatedIndex>(index);
  return std::max(std::abs(t.x.front()), std::abs(t.x.back()));
}

void WaveguideSpec::validate() const {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw DomainError("wavelength must be positive");
  if (!(n_s_h > 0.0) || !(n_s_v > 0.0)) throw DomainError("cladding indices must be positive");
  if (std::abs(n_s_h - n_s_v) > 1e-2 * nominal_index()) {
    throw DomainError("birefringence must be weak: |n_sH - n_sV| <= 1e-2 n_s");
  }
  if (const auto* g = std::get_if<GaussianIndex>(&index)) {
    if (!(g->delta_n > 0.0)) throw DomainError("index contrast delta_n must be positive (guiding core)");
    if (!(g->width > 0.0)) throw DomainError("core width must be positive");
    return;
  }
  const auto& t = std::get<TabulatedIndex>(index);
  if (t.x.size() < 2 || t.x.size() != t.contrast.size()) {
    throw DomainError("tabulated index needs matching x and n columns with at least 2 rows");
  }
  for (std::size_t j = 0; j < t.x.size(); ++j) {
    if (j > 0 && !(t.x[j] > t.x[j - 1])) throw DomainError("tabulated index x must be strictly increasing");
    if (!(t.contrast[j] >= -1e-12)) {
      throw DomainError("tabulated index dips below the cladding index (W > 0) at x = " +
                        std::to_string(t.x[j]));
    }
  }
}

TabulatedIndex load_index_csv(const std::filesystem::path& path, double cladding_index) {
  TabulatedIndex t;
  for (const auto& row : io::read_numeric_csv(path, 2)) {
    t.x.push_back(row[0]);
    t.contrast.push_back(row[1] - cladding_index);
  }
  return t;
}

}  // namespace curvelight
