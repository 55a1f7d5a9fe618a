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
#include <vector>

namespace curvelight {

/// Uniform transverse grid x_j = x_min + j dx, j = 0..points-1, both ends
/// included.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t points = 0;

  double dx() const noexcept { return (x_max - x_min) / static_cast<double>(points - 1); }
  double x(std::size_t j) const noexcept { return x_min + static_cast<double>(j) * dx(); }
  std::vector<double> coordinates() const;

  /// Throws GridError unless x_min < x_max and points >= 3.
  void validate() const;

  /// Same interval with (points - 1) doubled, so every old node is kept.
  Grid refined() const noexcept { return {x_min, x_max, 2 * (points - 1) + 1}; }

  bool operator==(const Grid&) const = default;
};

}  // namespace curvelight
