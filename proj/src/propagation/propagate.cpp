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

#include "curvelight/error.hpp"
#include "curvelight/propagation.hpp"

namespace curvelight {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kGuardSamples = 64;

double wrap_to_pi(double a) { return a - 2.0 * kPi * std::round(a / (2.0 * kPi)); }

// <u(x - xi)|psi> with u shifted by a cubic Lagrange interpolant. The
// interpolation weights are the same for every sample, so the overlap is four
// offset dot products.
cplx shifted_overlap(const kernels::KernelTable& K, const std::vector<double>& u, const cplx* psi,
                     std::size_t n, double shift_samples) {
  const double m = std::floor(shift_samples);
  const double t = 1.0 - (shift_samples - m);
  const double weights[4] = {
      -t * (t - 1.0) * (t - 2.0) / 6.0,
      (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
      -(t + 1.0) * t * (t - 2.0) / 2.0,
      (t + 1.0) * t * (t - 1.0) / 6.0,
  };
  const auto N = static_cast<std::ptrdiff_t>(n);
  cplx total{};
  for (int r = -1; r <= 2; ++r) {
    // u index = j + offset
    const std::ptrdiff_t offset = r - static_cast<std::ptrdiff_t>(m) - 1;
    const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, -offset);
    const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(N, N - offset);
    if (j1 <= j0) continue;
    total += weights[r + 1] * K.dot_real(u.data() + j0 + offset, psi + j0, static_cast<std::size_t>(j1 - j0));
  }
  return total;
}

cplx overlap(const kernels::KernelTable& K, const ModeBasis& basis, const cplx* psi, Frame frame,
             double xi) {
  const std::size_t n = basis.grid.points;
  const double dx = basis.grid.dx();
  const auto& u = basis.modes[0].u;
  if (frame == Frame::Comoving || xi == 0.0) return K.dot_real(u.data(), psi, n) * dx;
  return shifted_overlap(K, u, psi, n, xi / dx) * dx;
}

void check_field(const ScalarField& f, const PotentialSpec& p, const ModeBasis& reference) {
  f.grid.validate();
  if (f.values.size() != f.grid.points) throw GridError("field size does not match its grid");
  if (!(f.grid == reference.grid)) throw GridError("field and reference modes use different grids");
  if (f.polarization != reference.polarization) throw DomainError("field and reference modes differ in polarization");
  if (f.frame != p.frame) throw DomainError("field frame does not match the potential frame");
  if (reference.size() == 0) throw DomainError("reference basis is empty");
}

void check_edges(const cplx* psi, std::size_t n, double max_sq, double tol, double z) {
  const double limit = tol * tol * max_sq;
  if (std::norm(psi[0]) > limit || std::norm(psi[n - 1]) > limit) {
    throw GridError("field reached boundary at z = " + std::to_string(z) + " m");
  }
}

}  // namespace

cplx ground_overlap(const ScalarField& field, const ModeBasis& basis, const geometry::BendProfile& bend) {
  if (!(field.grid == basis.grid)) throw GridError("field and modes use different grids");
  const double xi = field.frame == Frame::Lab ? bend.at(field.z).xi : 0.0;
  return overlap(kernels::active_kernels(), basis, field.values.data(), field.frame, xi);
}

double estimate_phase_per_step(const ScalarField& initial, const PotentialSpec& potential,
                               double z_begin, double z_end, std::size_t steps, double energy_reference) {
  const Grid& g = initial.grid;
  const double dx = g.dx();
  const double n = potential.waveguide.effective_index(initial.polarization);
  const double k = potential.waveguide.k();
  const double dz = (z_end - z_begin) / static_cast<double>(steps);

  double peak = 0.0;
  for (const cplx& v : initial.values) peak = std::max(peak, std::abs(v));
  const double xi0 = initial.frame == Frame::Lab ? potential.bend.at(z_begin).xi : 0.0;

  // Kinetic rate k D <q^2>, D = 1 / (2 n k^2), from a first-difference estimate.
  double grad = 0.0;
  for (std::size_t j = 0; j + 1 < initial.values.size(); ++j) {
    grad += std::norm(initial.values[j + 1] - initial.values[j]);
  }
  const double norm = kernels::active_kernels().norm_sq(initial.values.data(), initial.values.size());
  const double q2 = norm > 0.0 ? grad / (dx * dx * norm) : 0.0;
  double rate = q2 / (2.0 * n * k);

  // Potential rate over the initial support, sampled along z, in the
  // waveguide's own coordinate.
  double potential_rate = 0.0;
  double max_slope = 0.0;
  for (std::size_t s = 0; s <= kGuardSamples; ++s) {
    const double z = z_begin + (z_end - z_begin) * static_cast<double>(s) / kGuardSamples;
    const geometry::BendSample b = potential.bend.at(z);
    max_slope = std::max(max_slope, std::abs(b.slope));
    for (std::size_t j = 0; j < initial.values.size(); ++j) {
      if (std::abs(initial.values[j]) < 1e-3 * peak) continue;
      const double xp = g.x(j) - xi0;
      double v = potential.waveguide.potential(xp);
      if (potential.frame == Frame::Comoving) v += n * b.curvature * xp;
      potential_rate = std::max(potential_rate, std::abs(k * (v - energy_reference)));
    }
  }
  rate += potential_rate;
  // The lab-frame field also carries the gauge phase, growing at k n xi'^2 / 2.
  if (potential.frame == Frame::Lab) rate += 0.5 * k * n * max_slope * max_slope;
  return rate * dz;
}

PropagationResult propagate(const ScalarField& initial, const PotentialSpec& potential, double z_begin,
                            double z_end, std::size_t steps, const ModeBasis& reference,
                            const PropagateOptions& options) {
  check_field(initial, potential, reference);
  potential.waveguide.validate();
  if (steps == 0) throw DomainError("steps must be positive");
  if (!(z_end > z_begin) || z_begin < 0.0 || z_end > potential.bend.length()) {
    throw DomainError("z span must be increasing and inside the bend");
  }
  const kernels::KernelTable& K = options.kernels ? *options.kernels : kernels::active_kernels();

  const Grid& grid = initial.grid;
  const std::size_t N = grid.points;
  const double dx = grid.dx();
  const Polarization pol = initial.polarization;
  const double n_eff = potential.waveguide.effective_index(pol);
  const double k = potential.waveguide.k();
  const double D = 1.0 / (2.0 * n_eff * k * k);
  const double e_ref = options.energy_reference.value_or(reference.modes[0].energy);
  const double dz = (z_end - z_begin) / static_cast<double>(steps);
  const double h = 0.5 * dz;
  const double off = -k * D / (dx * dx);
  const double shift = k * (2.0 * D / (dx * dx) - e_ref);

  PropagationResult result;
  result.energy_reference = e_ref;
  result.max_phase_per_step = estimate_phase_per_step(initial, potential, z_begin, z_end, steps, e_ref);
  if (result.max_phase_per_step > options.max_phase_per_step) {
    const auto required = static_cast<std::size_t>(
        std::ceil(static_cast<double>(steps) * result.max_phase_per_step / options.max_phase_per_step));
    throw StepGuardError("step guard: " + std::to_string(steps) + " steps advance the phase by " +
                             std::to_string(result.max_phase_per_step) + " rad per step; at least " +
                             std::to_string(required) + " steps are required",
                         required);
  }

  const std::vector<double> x = grid.coordinates();
  std::vector<double> w(N);
  std::vector<double> absorb;
  if (potential.frame == Frame::Comoving) {
    for (std::size_t j = 0; j < N; ++j) w[j] = potential.waveguide.potential(x[j]);
  }
  if (potential.absorber) {
    absorb.resize(N);
    if (potential.frame == Frame::Comoving) {
      for (std::size_t j = 0; j < N; ++j) absorb[j] = potential.absorber->rate(x[j]);
    }
  }

  std::vector<cplx> psi = initial.values;
  std::vector<cplx> diag(N), rhs(N), lhs(N), scratch(N);

  const double max0 = K.max_abs_sq(psi.data(), N);
  check_edges(psi.data(), N, max0, options.edge_tolerance, z_begin);

  auto xi_at = [&](double z) { return potential.frame == Frame::Lab ? potential.bend.at(z).xi : 0.0; };
  auto trapezoid_norm = [&](const std::vector<cplx>& f) {
    return (K.norm_sq(f.data(), N) - 0.5 * (std::norm(f.front()) + std::norm(f.back()))) * dx;
  };

  cplx c = overlap(K, reference, psi.data(), potential.frame, xi_at(z_begin));
  double tracked = std::arg(c);
  double last_arg = tracked;
  result.initial_norm = trapezoid_norm(psi);

  // Fields carry exp(+i k e_ref (z - z_begin)) relative to the physical
  // solution while stepping; `physical` restores it.
  auto physical_phase = [&](double z) { return -k * e_ref * (z - z_begin); };
  auto record = [&](double z) {
    result.history.push_back({z, trapezoid_norm(psi), std::norm(c), tracked + physical_phase(z)});
  };
  auto make_field = [&](double z) {
    ScalarField f{grid, psi, z, potential.frame, pol};
    const cplx phase = std::polar(1.0, physical_phase(z));
    for (cplx& v : f.values) v *= phase;
    return f;
  };

  std::vector<double> snapshots = options.snapshot_z;
  std::sort(snapshots.begin(), snapshots.end());
  std::size_t next_snapshot = 0;
  while (next_snapshot < snapshots.size() && snapshots[next_snapshot] <= z_begin) {
    result.snapshots.push_back(make_field(z_begin));
    ++next_snapshot;
  }
  record(z_begin);

  for (std::size_t s = 0; s < steps; ++s) {
    const double z_mid = z_begin + (static_cast<double>(s) + 0.5) * dz;
    const geometry::BendSample b = potential.bend.at(z_mid);
    double tilt = 0.0;
    if (potential.frame == Frame::Lab) {
      for (std::size_t j = 0; j < N; ++j) w[j] = potential.waveguide.potential(x[j] - b.xi);
      if (potential.absorber) {
        for (std::size_t j = 0; j < N; ++j) absorb[j] = potential.absorber->rate(x[j] - b.xi);
      }
    } else {
      tilt = n_eff * b.curvature;
    }
    // H = k (W + tilt x) + k (2D/dx^2 - e_ref) - i absorb on the diagonal.
    K.assemble_diagonal(w.data(), x.data(), tilt, k, shift, potential.absorber ? absorb.data() : nullptr,
                        diag.data(), N);
    K.cn_explicit(psi.data(), diag.data(), off, h, rhs.data(), N);
    K.cn_implicit_diagonal(diag.data(), h, lhs.data(), N);
    kernels::thomas_solve(lhs.data(), cplx(0.0, h * off), rhs.data(), scratch.data(), N);
    psi.swap(rhs);

    const double z = (s + 1 == steps) ? z_end : z_begin + static_cast<double>(s + 1) * dz;
    check_edges(psi.data(), N, K.max_abs_sq(psi.data(), N), options.edge_tolerance, z);
    c = overlap(K, reference, psi.data(), potential.frame, xi_at(z));
    const double a = std::arg(c);
    tracked += wrap_to_pi(a - last_arg);
    last_arg = a;

    while (next_snapshot < snapshots.size() && snapshots[next_snapshot] <= z + 1e-12 * dz) {
      result.snapshots.push_back(make_field(z));
      ++next_snapshot;
    }
    if (s + 1 == steps || (options.history_stride > 0 && (s + 1) % options.history_stride == 0)) record(z);
  }

  result.final_field = make_field(z_end);
  result.phase_total = tracked + physical_phase(z_end);
  result.ground_population = std::norm(c);
  result.final_overlap = c * std::polar(1.0, physical_phase(z_end));
  result.radiation_loss = 1.0 - trapezoid_norm(psi) / result.initial_norm;
  return result;
}

double extract_phase(const PropagationResult& result, const ModeBasis& reference) {
  if (!(result.final_field.grid == reference.grid) || result.final_field.polarization != reference.polarization) {
    throw DomainError("reference modes do not match the propagated field");
  }
  if (result.ground_population < 0.9) {
    throw NonAdiabaticField("non-adiabatic field: ground population " +
                            std::to_string(result.ground_population) + " is below 0.9");
  }
  // The principal value of the final overlap fixes the phase modulo 2 pi; the
  // dense tracking picks the branch.
  const double principal = std::arg(result.final_overlap);
  return principal + 2.0 * kPi * std::round((result.phase_total - principal) / (2.0 * kPi));
}

}  // namespace curvelight
