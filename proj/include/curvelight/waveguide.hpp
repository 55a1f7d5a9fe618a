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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace curvelight {

enum class Polarization { H, V };

std::string_view to_string(Polarization p) noexcept;
Polarization other(Polarization p) noexcept;

/// n(x) - n_s = delta_n exp(-x^2 / w^2)
struct GaussianIndex {
  double delta_n = 3e-3;
  double width = 3e-6;
  bool operator==(const GaussianIndex&) const = default;
};

/// Index contrast n(x) - n_s sampled on strictly increasing x, linearly
/// interpolated and held at the end values outside the table.
struct TabulatedIndex {
  std::vector<double> x;
  std::vector<double> contrast;
  bool operator==(const TabulatedIndex&) const = default;
};

using IndexProfile = std::variant<GaussianIndex, TabulatedIndex>;

/// Refractive-index landscape of a weakly birefringent guide. The core
/// contrast is shared by both polarizations; n_sH and n_sV are the
/// polarization-resolved cladding (effective) indices.
struct WaveguideSpec {
  double wavelength = 815e-9;
  double n_s_h = 1.45005;
  double n_s_v = 1.44995;
  IndexProfile index = GaussianIndex{};

  double k() const noexcept;
  double effective_index(Polarization p) const noexcept { return p == Polarization::H ? n_s_h : n_s_v; }
  double nominal_index() const noexcept { return 0.5 * (n_s_h + n_s_v); }
  double birefringence() const noexcept { return n_s_h - n_s_v; }

  /// Optical potential W(x) = n_s - n(x), <= 0 in the core.
  double potential(double x) const noexcept;
  /// Half-width beyond which |W| is negligible (10 w for a Gaussian).
  double core_extent() const noexcept;

  /// Throws DomainError on non-positive wavelength or index, a non-guiding
  /// profile (W > 0 anywhere) or strong birefringence.
  void validate() const;

  bool operator==(const WaveguideSpec&) const = default;
};

/// Reads a two-column CSV (x in meters, absolute index n) and stores it as a
/// contrast relative to `cladding_index`.
TabulatedIndex load_index_csv(const std::filesystem::path& path, double cladding_index);

}  // namespace curvelight
