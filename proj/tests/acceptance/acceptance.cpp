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


// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Diagnostics go to stdout on their own lines.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "curvelight/experiment.hpp"
#include "curvelight/modes.hpp"
#include "curvelight/propagation.hpp"
#include "curvelight/twophoton.hpp"
#include "reference_values.hpp"
#include "shooting.hpp"

namespace {

using namespace curvelight;
namespace ex = curvelight::experiment;
namespace tp = curvelight::twophoton;
using Clock = std::chrono::steady_clock;

const std::filesystem::path kConfigs = CURVELIGHT_CONFIG_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool condition, const std::string& what) {
    if (!condition) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (condition ? "" : " [x]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  o.check(elapsed < budget_s, fmt("%.2f s", elapsed) + fmt(" (budget %.0f s)", budget_s));
  if (!o.ok) ++failures;
  std::printf("%s %d %s: %s\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

tp::GuidePhases phases_for(double amplitude, const WaveguideSpec& spec = {}, double length = 0.08) {
  return tp::guide_phases(spec, geometry::BendProfile::sinusoidal(amplitude, length));
}

}  // namespace

int main() {
  criterion(1, "headline phase", 1.0, [](Outcome& o) {
    const tp::GuidePhases p = phases_for(5.7e-3);
    o.check(std::abs(p.delta_phi / std::numbers::pi - 1.0) <= 0.02, fmt("delta_phi = %.6f rad", p.delta_phi));
    const double a = tp::solve_amplitude_for_phase(WaveguideSpec{}, 0.08, std::numbers::pi);
    o.check(std::abs(a - 5.70e-3) <= 0.05e-3, fmt("A(pi) = %.5f mm", a * 1e3));
  });

  criterion(2, "halved amplitude", 1.0, [](Outcome& o) {
    const tp::GuidePhases p = phases_for(2.85e-3);
    const double p11 = tp::interfere(p.theta1, p.theta2).p_coincidence;
    const double target = std::pow(std::sin(std::numbers::pi / 8.0), 2);
    o.check(std::abs(p11 - target) <= 0.005, fmt("P11 = %.6f", p11) + fmt(" vs %.4f", target));
  });

  criterion(3, "HOM dip", 1.0, [](Outcome& o) {
    WaveguideSpec iso;
    iso.n_s_v = iso.n_s_h;
    double worst_iso = 0.0;
    for (double a : {0.0, 1e-3, 5.7e-3, 2e-2}) {
      const tp::GuidePhases p = phases_for(a, iso);
      worst_iso = std::max(worst_iso, tp::interfere(p.theta1, p.theta2).p_coincidence);
    }
    o.check(worst_iso <= 1e-12, fmt("equal indices: max P11 = %.2e", worst_iso));
    double worst_zero = 0.0;
    for (double dn : {1e-4, 1e-3, 5e-3}) {
      WaveguideSpec s;
      s.n_s_h = 1.45 + 0.5 * dn;
      s.n_s_v = 1.45 - 0.5 * dn;
      const tp::GuidePhases p = tp::guide_phases(s, geometry::BendProfile::straight(0.08));
      worst_zero = std::max(worst_zero, tp::interfere(p.theta1, p.theta2).p_coincidence);
    }
    o.check(worst_zero <= 1e-12, fmt("zero bend: max P11 = %.2e", worst_zero));
  });

  criterion(4, "oracle equivalence", 5.0, [](Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
      const double t1 = u(rng), t2 = u(rng);
      const double a = tp::interfere(t1, t2).p_coincidence;
      const double b = tp::brute_force_oracle(t1, t2).p_coincidence;
      const double c = std::pow(std::sin(0.5 * (t2 - t1)), 2);
      worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    }
    o.check(worst <= 1e-12, std::to_string(trials) + fmt(" pairs, max pairwise diff %.2e", worst));
  });

  ex::CovarianceReport cov;
  bool have_cov = false;
  criterion(5, "frame covariance", 120.0, [&](Outcome& o) {
    cov = ex::covariance_report(ex::load_config(kConfigs / "covariance_desk.json"));
    have_cov = true;
    o.check(cov.residual <= 1e-4, fmt("residual %.3e", cov.residual) + fmt(" at N = %.0f", double(cov.points)) +
                                      fmt(", %.0f steps", double(cov.steps)));
    o.check(std::abs(cov.order - 2.0) <= 0.3, fmt("order %.3f", cov.order) + fmt(" (refined %.3e)", cov.residual_refined));
  });

  criterion(6, "phase decomposition", 1.0, [&](Outcome& o) {
    o.check(have_cov, "shares the criterion 5 run");
    if (!have_cov) return;
    const double diff = cov.phase_lab - cov.phase_comoving;
    o.check(std::abs(diff - cov.phi_m) <= 1e-2,
            fmt("lab - comoving = %.6f rad", diff) + fmt(", phi_m = %.6f rad", cov.phi_m));
  });

  criterion(7, "mode solver", 10.0, [](Outcome& o) {
    const WaveguideSpec spec;
    const ModeBasis b = solve_modes(spec, Polarization::H, {-35e-6, 35e-6, 8192}, 1);
    oracle::ShootingProblem p{[](double x) { return -3e-3 * std::exp(-x * x / 9e-12); },
                              2.0 * spec.n_s_h * spec.k() * spec.k(), -35e-6, 35e-6, 400000};
    const double e0 = oracle::ground_energy(p, -3e-3, 0.0);
    const double rel = std::abs(b.modes[0].energy - e0) / std::abs(e0);
    o.check(rel <= 1e-6, fmt("E0 = %.10e", b.modes[0].energy) + fmt(", shooting rel err %.2e", rel));

    WaveguideSpec box;
    const double half = 5e-6, c = 0.5, eps = 1e-12;
    box.index = TabulatedIndex{{-10e-6, -half - eps, -half + eps, half - eps, half + eps, 10e-6}, {0, 0, c, c, 0, 0}};
    const ModeBasis bb = solve_modes(box, Polarization::H, {-10e-6, 10e-6, 2048}, 6);
    const double floor = box.potential(0.0);
    double worst = 0.0;
    for (std::size_t n = 1; n < bb.size(); ++n) {
      const double ratio = (bb.modes[n].energy - floor) / (bb.modes[0].energy - floor);
      const double want = static_cast<double>((n + 1) * (n + 1));
      worst = std::max(worst, std::abs(ratio / want - 1.0));
    }
    o.check(worst <= 5e-3, fmt("box (n+1)^2 pattern, worst rel dev %.2e", worst));
  });

  criterion(8, "adiabaticity consistency", 120.0, [](Outcome& o) {
    ex::ExperimentConfig c = ex::load_config(kConfigs / "adiabaticity.json");
    for (double a : {1e-3, 2e-3}) {
      c.bend.amplitude_m = a;
      const ex::AdiabaticityReport r = ex::adiabaticity_report(c);
      const bool perturbative = r.first_order_loss <= 1e-2 && r.simulated_loss <= 1e-2;
      o.check(perturbative, fmt("A = %.1f mm: ", a * 1e3) + fmt("first order %.4e", r.first_order_loss) +
                                fmt(", simulated %.4e", r.simulated_loss));
      const double rel = std::abs(r.first_order_loss - r.simulated_loss) / r.simulated_loss;
      o.check(rel <= 0.2, fmt("relative gap %.3f", rel) + fmt(" (%.0f bound states)", double(r.bound_states)));
    }
  });

  criterion(9, "conservation", 60.0, [](Outcome& o) {
    const WaveguideSpec spec;
    const Grid grid{-100e-6, 100e-6, 4096};
    const ModeBasis b = solve_modes(spec, Polarization::H, grid, 1);
    const PotentialSpec pot{Frame::Comoving, spec, geometry::BendProfile::sinusoidal(5e-6, 0.04), std::nullopt};
    PropagateOptions opt;
    opt.edge_tolerance = 1.0;
    opt.history_stride = 100;
    const PropagationResult r = propagate(mode_field(b, 0), pot, 0.0, 0.04, 10000, b, opt);
    double drift = 0.0;
    for (const HistoryEntry& h : r.history) drift = std::max(drift, std::abs(h.norm / r.initial_norm - 1.0));
    o.check(drift <= 1e-10, fmt("norm drift %.2e over 10^4 steps", drift));

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const tp::InterferenceResult x = tp::interfere(u(rng), u(rng));
      worst = std::max(worst, std::abs(x.p_coincidence + x.p_bunch_port1 + x.p_bunch_port2 - 1.0));
    }
    o.check(worst <= 1e-12, fmt("completeness max |p11 + p20 + p02 - 1| = %.2e", worst));
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
