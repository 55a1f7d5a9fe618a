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

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "curvelight/geometry.hpp"
#include "curvelight/grid.hpp"
#include "curvelight/kernels.hpp"
#include "curvelight/modes.hpp"
#include "curvelight/waveguide.hpp"

namespace curvelight {

using cplx = std::complex<double>;

/// Lab: the inertial frame, in which the well sits at x = xi(z).
/// Comoving: x' = x - xi(z), well fixed at the origin plus the inertial tilt.
enum class Frame { Lab, Comoving };

std::string_view to_string(Frame f) noexcept;

struct ScalarField {
  Grid grid;
  std::vector<cplx> values;
  double z = 0.0;
  Frame frame = Frame::Comoving;
  Polarization polarization = Polarization::H;

  /// <psi|psi> by the trapezoid rule.
  double norm_sq() const;
};

/// Field equal to mode n of `basis`, well centred at the origin. In the lab
/// frame that is the right placement wherever xi(z) = 0, e.g. at both ends
/// of a bend.
ScalarField mode_field(const ModeBasis& basis, std::size_t n, Frame frame = Frame::Comoving, double z = 0.0);

/// Imaginary potential -i strength * r^2, r = clamp((|x'| - start) / width, 0, 1),
/// where x' is the waveguide's own transverse coordinate. Strength is in 1/m
/// (an amplitude decay rate along z).
struct AbsorberSpec {
  double start = 28e-6;
  double width = 15e-6;
  double strength = 5e4;

  double rate(double x_prime) const noexcept;
  bool operator==(const AbsorberSpec&) const = default;
};

/// Lab: V(x, z) = W(x - xi(z)).  Comoving: V'(x', z) = W(x') + n xi''(z) x'.
/// n is the effective index of the polarization being propagated.
struct PotentialSpec {
  Frame frame = Frame::Comoving;
  WaveguideSpec waveguide;
  geometry::BendProfile bend = geometry::BendProfile::straight(1.0);
  std::optional<AbsorberSpec> absorber;
};

/// Real part of the potential on `grid` at z, in index units.
std::vector<double> potential_samples(const PotentialSpec& potential, Polarization polarization,
                                      const Grid& grid, double z);

struct PropagateOptions {
  /// Record a history entry every `history_stride` steps (0: only the ends).
  std::size_t history_stride = 100;
  /// Store a copy of the field at the first step boundary at or beyond each z.
  std::vector<double> snapshot_z;
  /// Largest |psi| allowed at either grid edge, relative to max |psi|.
  double edge_tolerance = 1e-6;
  /// Largest phase advance per step the guard accepts, in radians.
  double max_phase_per_step = 0.1;
  /// Constant subtracted from the potential during stepping and restored
  /// exactly afterwards; defaults to the reference ground energy E_0.
  std::optional<double> energy_reference;
  /// Kernel table override (tests); null selects active_kernels().
  const kernels::KernelTable* kernels = nullptr;
};

struct HistoryEntry {
  double z = 0.0;
  double norm = 0.0;
  double ground_population = 0.0;
  double phase = 0.0;  // unwrapped arg <u_0|psi>
};

struct PropagationResult {
  ScalarField final_field;
  double phase_total = 0.0;        // unwrapped arg <u_0|psi(z_end)>, rad
  double ground_population = 0.0;  // |<u_0|psi(z_end)>|^2
  cplx final_overlap;              // <u_0|psi(z_end)>
  double initial_norm = 0.0;
  double radiation_loss = 0.0;     // 1 - final norm / initial norm (absorber runs)
  double energy_reference = 0.0;
  double max_phase_per_step = 0.0; // guard estimate for the accepted run
  std::vector<HistoryEntry> history;
  std::vector<ScalarField> snapshots;
};

/// Guard estimate of the largest phase advanced in one step, in radians.
double estimate_phase_per_step(const ScalarField& initial, const PotentialSpec& potential,
                               double z_begin, double z_end, std::size_t steps, double energy_reference);

/// Crank-Nicolson integration of
///   i (1/k) psi_z = -(1/(2 n k^2)) psi_xx + V psi
/// from z_begin to z_end, potential taken at each half step. `reference`
/// supplies u_0 for the ground-population and phase diagnostics (in the lab
/// frame u_0 is carried along to x = xi(z)).
///
/// Throws StepGuardError, with the smallest acceptable step count, if the
/// phase per step would exceed the limit, and GridError if the field reaches
/// a grid edge.
PropagationResult propagate(const ScalarField& initial, const PotentialSpec& potential, double z_begin,
                            double z_end, std::size_t steps, const ModeBasis& reference,
                            const PropagateOptions& options = {});

/// Overlap <u_0|psi>, with u_0 carried to xi(field.z) for lab-frame fields.
cplx ground_overlap(const ScalarField& field, const ModeBasis& basis, const geometry::BendProfile& bend);

/// Comoving to lab frame:
///   psi(x) = psi'(x - xi) exp(i k n xi' (x - xi) + i phi_m(z)).
/// The shift is spectral. Throws GridError if it would move a non-negligible
/// part of the field across a grid edge.
ScalarField gauge_map(const ScalarField& field_comoving, const geometry::BendProfile& bend,
                      const WaveguideSpec& spec, double z);

/// Total (unwrapped) phase of the final field against u_0: the principal
/// value of the final overlap, placed on the branch nearest the phase tracked
/// during propagation. Throws NonAdiabaticField below 0.9 ground population.
double extract_phase(const PropagationResult& result, const ModeBasis& reference);

/// First-order amplitudes c_n(T) = -i k n <u_n|x|u_0> int_0^T xi'' e^{i k (E_n - E_0) z} dz
/// for n = 1..n_max, returned in that order.
std::vector<cplx> transition_amplitudes(const ModeBasis& basis, const geometry::BendProfile& bend,
                                        const WaveguideSpec& spec, std::size_t n_max);

/// ||a - b|| / ||a||.
double relative_l2_distance(const ScalarField& a, const ScalarField& b);

void write_field_csv(const ScalarField& field, const std::filesystem::path& path);
void write_history_csv(const PropagationResult& result, const std::filesystem::path& path);

}  // namespace curvelight
