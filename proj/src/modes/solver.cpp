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


#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvelight/csv.hpp"
#include "curvelight/error.hpp"
#include "curvelight/modes.hpp"

namespace curvelight {
namespace {

constexpr double kEdgeDecay = 1e-8;
constexpr double kOrthonormalityTol = 1e-8;

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  double lower_bound = 0.0;  // Gershgorin bound on the spectrum
};

Tridiagonal assemble(const WaveguideSpec& spec, Polarization pol, const Grid& grid) {
  grid.validate();
  spec.validate();
  const double n = spec.effective_index(pol);
  const double k = spec.k();
  const double dx = grid.dx();
  const double c = 1.0 / (2.0 * n * k * k * dx * dx);
  Tridiagonal t{std::vector<double>(grid.points), std::vector<double>(grid.points - 1, -c), 0.0};
  double w_min = 0.0;
  for (std::size_t j = 0; j < grid.points; ++j) {
    const double w = spec.potential(grid.x(j));
    t.diag[j] = 2.0 * c + w;
    w_min = std::min(w_min, w);
  }
  t.lower_bound = w_min - 1e-6 * std::abs(w_min) - std::numeric_limits<double>::min();
  return t;
}

// First local extremum from the left whose size is a visible fraction of the
// peak; tails far below that carry no sign information.
std::size_t leftmost_extremum(const std::vector<double>& u) {
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::abs(v));
  const double floor = 1e-2 * peak;
  for (std::size_t j = 1; j + 1 < u.size(); ++j) {
    const double a = std::abs(u[j]);
    if (a >= floor && a >= std::abs(u[j - 1]) && a >= std::abs(u[j + 1])) return j;
  }
  return 0;
}

}  // namespace

double trapezoid(std::span<const double> f, double dx) {
  if (f.empty()) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f[j];
  return s * dx;
}

std::size_t count_bound_states(const WaveguideSpec& spec, Polarization polarization, const Grid& grid) {
  Tridiagonal t = assemble(spec, polarization, grid);
  const auto n = static_cast<lapack_int>(grid.points);
  lapack_int found = 0;
  std::vector<double> w(grid.points);
  std::vector<lapack_int> ifail(grid.points);
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'N', 'V', n, t.diag.data(), t.off.data(),
                                         t.lower_bound, 0.0, 0, 0, 0.0, &found, w.data(), &dummy, 1,
                                         ifail.data());
  if (info < 0) throw Error("dstevx: illegal argument " + std::to_string(-info));
  // Range 'V' is half-open (vl, vu]; an eigenvalue exactly at 0 is not bound.
  std::size_t count = 0;
  for (lapack_int i = 0; i < found; ++i) count += w[static_cast<std::size_t>(i)] < 0.0;
  return count;
}

ModeBasis solve_modes(const WaveguideSpec& spec, Polarization polarization, const Grid& grid,
                      std::size_t n_modes) {
  if (n_modes == 0) throw DomainError("n_modes must be at least 1");
  const std::size_t bound = count_bound_states(spec, polarization, grid);
  if (bound < n_modes) throw InsufficientBoundStates(n_modes, bound);

  Tridiagonal t = assemble(spec, polarization, grid);
  const std::size_t N = grid.points;
  const auto n = static_cast<lapack_int>(N);
  lapack_int found = 0;
  std::vector<double> w(N);
  std::vector<double> z(N * n_modes);
  std::vector<lapack_int> ifail(N);
  const lapack_int info = LAPACKE_dstevx(
      LAPACK_COL_MAJOR, 'V', 'I', n, t.diag.data(), t.off.data(), 0.0, 0.0, 1,
      static_cast<lapack_int>(n_modes), 2.0 * LAPACKE_dlamch('S'), &found, w.data(), z.data(), n,
      ifail.data());
  if (info != 0 || found != static_cast<lapack_int>(n_modes)) {
    throw Error("dstevx failed (info " + std::to_string(info) + ")");
  }

  ModeBasis basis{grid, polarization, spec.effective_index(polarization), spec.k(), {}};
  const double dx = grid.dx();
  for (std::size_t m = 0; m < n_modes; ++m) {
    Mode mode{w[m], std::vector<double>(z.begin() + static_cast<std::ptrdiff_t>(m * N),
                                        z.begin() + static_cast<std::ptrdiff_t>((m + 1) * N))};
    std::vector<double> sq(N);
    for (std::size_t j = 0; j < N; ++j) sq[j] = mode.u[j] * mode.u[j];
    double scale = 1.0 / std::sqrt(trapezoid(sq, dx));
    if (mode.u[leftmost_extremum(mode.u)] < 0.0) scale = -scale;
    double peak = 0.0;
    for (double& v : mode.u) {
      v *= scale;
      peak = std::max(peak, std::abs(v));
    }
    if (std::abs(mode.u.front()) > kEdgeDecay * peak || std::abs(mode.u.back()) > kEdgeDecay * peak) {
      throw GridError("mode " + std::to_string(m) + " has not decayed at the grid edges; widen the grid");
    }
    basis.modes.push_back(std::move(mode));
  }

  // Post-solve checks: sorted, bound, nodeless ground state, orthonormal.
  for (std::size_t m = 0; m < n_modes; ++m) {
    if (!(basis.modes[m].energy < 0.0)) throw Error("solver returned an unbound mode");
    if (m > 0 && !(basis.modes[m].energy > basis.modes[m - 1].energy)) {
      throw Error("mode energies are not strictly increasing");
    }
  }
  {
    const auto& u0 = basis.modes[0].u;
    double peak = 0.0;
    for (double v : u0) peak = std::max(peak, std::abs(v));
    for (double v : u0) {
      if (v < -1e-6 * peak) throw Error("ground mode has a node");
    }
  }
  std::vector<double> prod(N);
  for (std::size_t a = 0; a < n_modes; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      for (std::size_t j = 0; j < N; ++j) prod[j] = basis.modes[a].u[j] * basis.modes[b].u[j];
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(trapezoid(prod, dx) - expected) > kOrthonormalityTol) {
        throw Error("modes are not orthonormal");
      }
    }
  }
  return basis;
}

double dipole_element(const ModeBasis& basis, std::size_t m, std::size_t n) {
  if (m >= basis.size() || n >= basis.size()) {
    throw DomainError("mode index out of range: basis holds " + std::to_string(basis.size()) + " modes");
  }
  const std::size_t N = basis.grid.points;
  std::vector<double> f(N);
  for (std::size_t j = 0; j < N; ++j) f[j] = basis.modes[m].u[j] * basis.grid.x(j) * basis.modes[n].u[j];
  return trapezoid(f, basis.grid.dx());
}

void write_modes_csv(const ModeBasis& basis, const std::filesystem::path& profiles,
                     const std::filesystem::path& energies) {
  std::vector<std::string> header{"x_m"};
  for (std::size_t m = 0; m < basis.size(); ++m) header.push_back("u" + std::to_string(m) + "_per_sqrt_m");
  io::CsvWriter out(profiles, header);
  std::vector<double> row(basis.size() + 1);
  for (std::size_t j = 0; j < basis.grid.points; ++j) {
    row[0] = basis.grid.x(j);
    for (std::size_t m = 0; m < basis.size(); ++m) row[m + 1] = basis.modes[m].u[j];
    out.row(row);
  }
  io::CsvWriter ev(energies, {"n", "E_n", "n_eff"});
  for (std::size_t m = 0; m < basis.size(); ++m) {
    ev.row({static_cast<double>(m), basis.modes[m].energy, basis.effective_index - basis.modes[m].energy});
  }
}

}  // namespace curvelight
