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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "curvelight/error.hpp"
#include "curvelight/modes.hpp"
#include "shooting.hpp"

namespace curvelight {
namespace {

WaveguideSpec default_guide() { return WaveguideSpec{}; }

WaveguideSpec box_guide(double half_width, double contrast, double extent) {
  // Step profile sampled finely enough that the ramp between samples is a
  // negligible fraction of the box.
  TabulatedIndex t;
  const double eps = 1e-12;
  t.x = {-extent, -half_width - eps, -half_width + eps, half_width - eps, half_width + eps, extent};
  t.contrast = {0.0, 0.0, contrast, contrast, 0.0, 0.0};
  WaveguideSpec s;
  s.index = t;
  return s;
}

double peak(const std::vector<double>& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

TEST(Modes, GroundEnergyMatchesShootingOracle) {
  const WaveguideSpec spec = default_guide();
  const Grid grid{-35e-6, 35e-6, 8192};
  const ModeBasis basis = solve_modes(spec, Polarization::H, grid, 1);

  const double n = spec.n_s_h;
  const double k = spec.k();
  oracle::ShootingProblem p{[&](double x) { return -3e-3 * std::exp(-x * x / 9e-12); }, 2.0 * n * k * k, -35e-6,
                            35e-6, 400000};
  const double e0 = oracle::ground_energy(p, -3e-3, 0.0);
  EXPECT_NEAR(e0, -1.8518348420592903e-3, 1e-9 * 1.85e-3);  // independent scipy value
  EXPECT_NEAR(basis.modes[0].energy, e0, 1e-6 * std::abs(e0));
}

TEST(Modes, DefaultWellHasTwoBoundStates) {
  const Grid grid{-100e-6, 100e-6, 8192};
  EXPECT_EQ(count_bound_states(default_guide(), Polarization::H, grid), 2u);
  try {
    solve_modes(default_guide(), Polarization::H, grid, 3);
    FAIL() << "expected InsufficientBoundStates";
  } catch (const InsufficientBoundStates& e) {
    EXPECT_EQ(e.requested(), 3u);
    EXPECT_EQ(e.found(), 2u);
    EXPECT_NE(std::string(e.what()).find("supports 2"), std::string::npos);
  }
}

TEST(Modes, InvariantsHold) {
  const Grid grid{-100e-6, 100e-6, 8192};
  const ModeBasis b = solve_modes(default_guide(), Polarization::H, grid, 2);
  EXPECT_LT(b.modes[0].energy, b.modes[1].energy);
  EXPECT_LT(b.modes[1].energy, 0.0);
  std::vector<double> prod(grid.points);
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      for (std::size_t j = 0; j < grid.points; ++j) prod[j] = b.modes[m].u[j] * b.modes[n].u[j];
      EXPECT_NEAR(trapezoid(prod, grid.dx()), m == n ? 1.0 : 0.0, 1e-8);
    }
  }
  for (double v : b.modes[0].u) EXPECT_GE(v, -1e-6 * peak(b.modes[0].u));
}

TEST(Modes, ParityOfSymmetricWell) {
  const Grid grid{-100e-6, 100e-6, 8193};  // odd: x = 0 is a node of the grid
  const ModeBasis b = solve_modes(default_guide(), Polarization::H, grid, 2);
  const std::size_t N = grid.points;
  for (std::size_t j = 0; j < N; ++j) {
    EXPECT_NEAR(b.modes[0].u[j], b.modes[0].u[N - 1 - j], 1e-8 * peak(b.modes[0].u));
    EXPECT_NEAR(b.modes[1].u[j], -b.modes[1].u[N - 1 - j], 1e-8 * peak(b.modes[1].u));
  }
  EXPECT_NEAR(dipole_element(b, 0, 0), 0.0, 1e-10 * 1e-6);
  EXPECT_GT(std::abs(dipole_element(b, 0, 1)), 1e-7);
}

TEST(Modes, SignConventionLeftmostExtremumPositive) {
  const Grid grid{-100e-6, 100e-6, 8192};
  const ModeBasis b = solve_modes(default_guide(), Polarization::H, grid, 2);
  // The odd mode's leftmost extremum is on the negative side.
  std::size_t arg = 0;
  for (std::size_t j = 0; j < grid.points / 2; ++j) {
    if (std::abs(b.modes[1].u[j]) > std::abs(b.modes[1].u[arg])) arg = j;
  }
  EXPECT_GT(b.modes[1].u[arg], 0.0);
  EXPECT_GT(b.modes[0].u[grid.points / 2], 0.0);
}

TEST(Modes, BoxSpectrumRatios) {
  const double a = 10e-6;
  const WaveguideSpec spec = box_guide(0.5 * a, 0.5, 10e-6);
  const Grid grid{-10e-6, 10e-6, 2048};
  const ModeBasis b = solve_modes(spec, Polarization::H, grid, 6);
  const double gap = b.modes[1].energy - b.modes[0].energy;
  for (std::size_t n = 1; n + 1 < b.size(); ++n) {
    const double ratio = (b.modes[n + 1].energy - b.modes[n].energy) / gap;
    const double expected = (2.0 * static_cast<double>(n) + 3.0) / 3.0;  // ((n+2)^2 - (n+1)^2) / (2^2 - 1^2)
    EXPECT_NEAR(ratio / expected, 1.0, 5e-3) << n;
  }
}

TEST(Modes, HarmonicLimitDipole) {
  // Wide Gaussian: W ~ -dn + dn x^2 / w^2 near the bottom.
  WaveguideSpec spec;
  spec.index = GaussianIndex{0.05, 200e-6};
  const Grid grid{-60e-6, 60e-6, 2048};
  const ModeBasis b = solve_modes(spec, Polarization::H, grid, 2);
  const double n = spec.n_s_h;
  const double k = spec.k();
  const double omega = std::sqrt(2.0 * 0.05 / (200e-6 * 200e-6 * n * k * k));
  const double expected = 1.0 / std::sqrt(2.0 * n * k * k * omega);
  EXPECT_NEAR(std::abs(dipole_element(b, 0, 1)) / expected, 1.0, 1e-2);
}

TEST(Modes, SecondOrderSelfConvergence) {
  const WaveguideSpec spec = default_guide();
  double e[3];
  const std::size_t sizes[3] = {1025, 2049, 4097};
  for (int i = 0; i < 3; ++i) e[i] = solve_modes(spec, Polarization::H, {-35e-6, 35e-6, sizes[i]}, 1).modes[0].energy;
  const double ratio = (e[0] - e[1]) / (e[1] - e[2]);
  EXPECT_NEAR(ratio, 4.0, 0.1);
}

TEST(Modes, PolarizationChangesGroundEnergySlightly) {
  const Grid grid{-35e-6, 35e-6, 4096};
  const double eh = solve_modes(default_guide(), Polarization::H, grid, 1).modes[0].energy;
  const double ev = solve_modes(default_guide(), Polarization::V, grid, 1).modes[0].energy;
  EXPECT_NE(eh, ev);
  EXPECT_LE(std::abs(eh - ev) / std::abs(eh), 1e-3);
}

TEST(Modes, NarrowGridIsAGridError) {
  EXPECT_THROW(solve_modes(default_guide(), Polarization::H, {-8e-6, 8e-6, 1024}, 1), GridError);
  // u_1 of the default well is weakly bound and needs a wide window.
  EXPECT_THROW(solve_modes(default_guide(), Polarization::H, {-40e-6, 40e-6, 4096}, 2), GridError);
}

TEST(Modes, DipoleIndexOutOfRange) {
  const ModeBasis b = solve_modes(default_guide(), Polarization::H, {-35e-6, 35e-6, 2048}, 1);
  EXPECT_THROW(dipole_element(b, 0, 1), DomainError);
}

TEST(Modes, ZeroModesRequested) {
  EXPECT_THROW(solve_modes(default_guide(), Polarization::H, {-35e-6, 35e-6, 2048}, 0), DomainError);
}

TEST(Modes, CsvExport) {
  const ModeBasis b = solve_modes(default_guide(), Polarization::H, {-100e-6, 100e-6, 4096}, 2);
  const auto dir = std::filesystem::temp_directory_path();
  write_modes_csv(b, dir / "cl_modes.csv", dir / "cl_energies.csv");
  std::ifstream in(dir / "cl_modes.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x_m,u0_per_sqrt_m,u1_per_sqrt_m");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 4096u);
}

TEST(Waveguide, ValidationRejectsAntiGuide) {
  WaveguideSpec s;
  s.index = GaussianIndex{-1e-3, 3e-6};
  EXPECT_THROW(s.validate(), DomainError);
  TabulatedIndex t{{-1e-5, 0.0, 1e-5}, {0.0, -1e-3, 0.0}};
  s.index = t;
  EXPECT_THROW(s.validate(), DomainError);
  s = WaveguideSpec{};
  s.wavelength = 0.0;
  EXPECT_THROW(s.validate(), DomainError);
}

TEST(Waveguide, WavenumberAndPotential) {
  const WaveguideSpec s;
  EXPECT_DOUBLE_EQ(s.k() * s.wavelength, 2.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(s.potential(0.0), -3e-3);
  EXPECT_LE(s.potential(1e-6), 0.0);
  EXPECT_NEAR(s.potential(60e-6), 0.0, 1e-150);
}

}  // namespace
}  // namespace curvelight
