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
#include <span>
#include <vector>

#include "curvelight/grid.hpp"
#include "curvelight/waveguide.hpp"

namespace curvelight {

struct Mode {
  double energy = 0.0;     // E_n, dimensionless (index units, cladding at 0)
  std::vector<double> u;   // real profile, trapezoid-normalized, 1/sqrt(m)
};

/// Bound modes of -(1/(2 n k^2)) u'' + W(x) u = E u on a uniform grid, with
/// u = 0 just beyond both ends. Immutable once built.
struct ModeBasis {
  Grid grid;
  Polarization polarization = Polarization::H;
  double effective_index = 0.0;
  double k = 0.0;
  std::vector<Mode> modes;

  std::size_t size() const noexcept { return modes.size(); }
  const Mode& operator[](std::size_t n) const { return modes.at(n); }
};

/// Lowest `n_modes` eigenpairs. Signs are fixed so each u_n is positive at its
/// leftmost significant extremum.
///
/// Throws InsufficientBoundStates if fewer than `n_modes` states have E < 0,
/// and GridError if a requested mode has not decayed to 1e-8 of its peak at
/// the grid edges.
ModeBasis solve_modes(const WaveguideSpec& spec, Polarization polarization, const Grid& grid,
                      std::size_t n_modes);

/// Number of discrete eigenvalues below the cladding level (E < 0).
std::size_t count_bound_states(const WaveguideSpec& spec, Polarization polarization, const Grid& grid);

/// Trapezoid rule on a uniform grid.
double trapezoid(std::span<const double> f, double dx);

/// <u_m| x |u_n> by the trapezoid rule.
double dipole_element(const ModeBasis& basis, std::size_t m, std::size_t n);

/// Columns x_m, u_0, u_1, ... plus a second file of eigenvalues.
void write_modes_csv(const ModeBasis& basis, const std::filesystem::path& profiles,
                     const std::filesystem::path& energies);

}  // namespace curvelight
