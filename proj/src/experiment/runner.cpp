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


#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "curvelight/csv.hpp"
#include "curvelight/error.hpp"
#include "curvelight/experiment.hpp"
#include "curvelight/modes.hpp"
#include "curvelight/propagation.hpp"
#include "curvelight/twophoton.hpp"

namespace curvelight::experiment {
namespace {

namespace fs = std::filesystem;

struct Setup {
  WaveguideSpec spec;
  geometry::BendProfile bend;
  Grid grid;
};

Setup setup(const ExperimentConfig& c) {
  WaveguideSpec spec = build_waveguide(c);
  geometry::BendProfile bend = build_bend(c);
  Grid grid = build_grid(c, spec, bend);
  return {std::move(spec), std::move(bend), grid};
}

PotentialSpec make_potential(const Setup& s, Frame frame, const ExperimentConfig& c) {
  return {frame, s.spec, s.bend, c.absorber};
}

PropagateOptions quiet_options() {
  PropagateOptions o;
  o.history_stride = 0;
  return o;
}

// Grid centred on the well, wide enough for the guided modes; used where the
// configured grid follows a large bend and cannot resolve the core.
Grid mode_grid(const WaveguideSpec& spec, std::size_t points) {
  const double m = std::max(50e-6, spec.core_extent());
  return {-m, m, points};
}

void run_modes(const ExperimentConfig& c, const ModesRun& run, const fs::path& out, bool write, RunReport& r) {
  Setup s = setup(c);
  const std::size_t bound = count_bound_states(s.spec, run.polarization, s.grid);
  const std::size_t n = run.n_modes == 0 ? bound : run.n_modes;
  const ModeBasis basis = solve_modes(s.spec, run.polarization, s.grid, n);
  r.note("polarization", std::string(to_string(run.polarization)));
  r.add("bound_states", static_cast<double>(bound));
  r.add("effective_index", basis.effective_index);
  for (std::size_t m = 0; m < basis.size(); ++m) r.add("E_" + std::to_string(m), basis.modes[m].energy);
  if (basis.size() > 1) r.add("dipole_01_m", dipole_element(basis, 0, 1));
  if (write) {
    write_modes_csv(basis, out / "modes.csv", out / "energies.csv");
    r.files.push_back(out / "modes.csv");
    r.files.push_back(out / "energies.csv");
  }
}

void run_propagate(const ExperimentConfig& c, const PropagateRun& run, const fs::path& out, bool write,
                   RunReport& r) {
  Setup s = setup(c);
  if (run.frame == Frame::Lab && s.bend.at(0.0).xi != 0.0) throw DomainError("bend must start on the axis");
  const ModeBasis basis = solve_modes(s.spec, run.polarization, s.grid, 1);
  const ScalarField initial = mode_field(basis, 0, run.frame, 0.0);
  PropagateOptions opt;
  opt.snapshot_z = run.snapshots_m;
  const PropagationResult res =
      propagate(initial, make_potential(s, run.frame, c), 0.0, s.bend.length(), c.grid.steps, basis, opt);

  const double k = s.spec.k();
  const double n_eff = s.spec.effective_index(run.polarization);
  const double T = s.bend.length();
  const double phi = geometry::phi_m(s.bend, n_eff, k, T);
  r.note("frame", std::string(to_string(run.frame)));
  r.note("polarization", std::string(to_string(run.polarization)));
  r.add("E_0", basis.modes[0].energy);
  r.add("excess_path_m", geometry::excess_path(s.bend));
  r.add("phi_m_rad", phi);
  r.add("ground_population", res.ground_population);
  r.add("phase_total_rad", res.phase_total);
  const double expected = -k * basis.modes[0].energy * T + (run.frame == Frame::Lab ? phi : 0.0);
  r.add("expected_adiabatic_phase_rad", expected);
  if (res.ground_population >= 0.9) {
    r.add("extracted_phase_rad", extract_phase(res, basis));
  } else {
    r.note("extracted_phase_rad", "undefined (ground population below 0.9)");
  }
  r.add("norm_final", res.final_field.norm_sq());
  r.add("radiation_loss", res.radiation_loss);
  r.add("phase_per_step_rad", res.max_phase_per_step);
  if (write) {
    write_history_csv(res, out / "history.csv");
    write_field_csv(res.final_field, out / "final_field.csv");
    r.files.push_back(out / "history.csv");
    r.files.push_back(out / "final_field.csv");
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
      const fs::path p = out / ("snapshot_" + std::to_string(i) + ".csv");
      write_field_csv(res.snapshots[i], p);
      r.files.push_back(p);
    }
  }
}

void run_hom_point(const ExperimentConfig& c, RunReport& r) {
  const WaveguideSpec spec = build_waveguide(c);
  const geometry::BendProfile bend = build_bend(c);
  const twophoton::GuidePhases g = twophoton::guide_phases(spec, bend);
  const twophoton::InterferenceResult ir = twophoton::interfere(g.theta1, g.theta2);
  const twophoton::InterferenceResult oracle = twophoton::brute_force_oracle(g.theta1, g.theta2);
  const double k = spec.k();
  const double T = bend.length();
  const geometry::PhaseReport geo = geometry::phase_report(bend, spec.n_s_h, k);

  r.add("excess_path_m", g.excess_path);
  r.add("arc_length_exact_m", geo.arc_length_exact);
  r.add("arc_length_paraxial_m", geo.arc_length_paraxial);
  r.add("max_abs_slope", bend.max_abs_slope());
  r.add("phi_m_H_rad", geometry::phi_m(bend, spec.n_s_h, k, T));
  r.add("phi_m_V_rad", geometry::phi_m(bend, spec.n_s_v, k, T));
  r.add("delta_tau_equiv_s", geo.delta_tau_equiv);
  r.add("theta1_rad", g.theta1);
  r.add("theta2_rad", g.theta2);
  r.add("delta_phi_rad", g.delta_phi);
  r.add("P11", ir.p_coincidence);
  r.add("P20", ir.p_bunch_port1);
  r.add("P02", ir.p_bunch_port2);
  r.add("P11_closed_form", std::pow(std::sin(0.5 * g.delta_phi), 2));
  r.add("P11_oracle", oracle.p_coincidence);
  if (spec.n_s_h != spec.n_s_v) {
    r.add("amplitude_for_pi_m", twophoton::solve_amplitude_for_phase(spec, T, std::numbers::pi));
  }

  // Guided-mode correction left out of the bulk phases: both branches carry
  // one H and one V photon over the same length, so it is common-mode.
  const Grid mg = mode_grid(spec, std::max<std::size_t>(c.grid.points, 4096));
  const double e0h = solve_modes(spec, Polarization::H, mg, 1).modes[0].energy;
  const double e0v = solve_modes(spec, Polarization::V, mg, 1).modes[0].energy;
  r.add("E0_H", e0h);
  r.add("E0_V", e0v);
  r.add("envelope_phase_kT_E0H_minus_E0V_rad", k * T * (e0h - e0v));
  r.note("envelope_phase_note", "common to both branches; cancels in delta_phi");
}

void run_hom_sweep(const ExperimentConfig& c, const HomSweepRun& run, const fs::path& out, bool write,
                   unsigned threads, RunReport& r) {
  const WaveguideSpec spec = build_waveguide(c);
  const double T = c.bend.kind == "tabulated" ? build_bend(c).length() : c.bend.length_m;
  struct Row {
    double a, excess, dphi, p11;
  };
  std::vector<Row> rows(run.points);
  parallel_for(run.points, threads, [&](std::size_t i) {
    const double a = run.amplitude_min_m + (run.amplitude_max_m - run.amplitude_min_m) * static_cast<double>(i) /
                                               static_cast<double>(run.points - 1);
    const twophoton::GuidePhases g = twophoton::guide_phases(spec, geometry::BendProfile::sinusoidal(a, T));
    rows[i] = {a, g.excess_path, g.delta_phi, twophoton::interfere(g.theta1, g.theta2).p_coincidence};
  });
  double p_max = 0.0;
  for (const Row& row : rows) p_max = std::max(p_max, row.p11);
  r.add("points", static_cast<double>(run.points));
  r.add("delta_phi_max_rad", rows.back().dphi);
  r.add("P11_max", p_max);
  if (write) {
    io::CsvWriter csv(out / "hom_sweep.csv", {"A_m", "excess_path_m", "delta_phi_rad", "P11"});
    for (const Row& row : rows) csv.row({row.a, row.excess, row.dphi, row.p11});
    r.files.push_back(out / "hom_sweep.csv");
  }
}

void write_summary(const ExperimentConfig& c, const RunReport& r, const fs::path& out) {
  std::ofstream s(out / "summary.txt");
  s << "run: " << r.kind << "\n";
  s << "seed: " << c.seed << "\n";
  for (const auto& [k, v] : r.values) s << k << ": " << io::format_double(v) << "\n";
  for (const auto& [k, v] : r.notes) s << k << ": " << v << "\n";
  for (const auto& f : r.files) s << "file: " << f.filename().string() << "\n";
  if (!s) throw Error("cannot write summary in " + out.string());
}

}  // namespace

double RunReport::value(const std::string& key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  throw std::out_of_range("no value named " + key);
}

CovarianceReport covariance_report(const ExperimentConfig& c, unsigned threads) {
  const Polarization pol =
      std::holds_alternative<CovarianceRun>(c.run) ? std::get<CovarianceRun>(c.run).polarization : Polarization::H;
  Setup s = setup(c);
  if (s.bend.at(0.0).xi != 0.0 || s.bend.at(s.bend.length()).xi != 0.0) {
    throw DomainError("covariance check needs a bend that starts and ends on the axis");
  }
  const double T = s.bend.length();

  struct Level {
    Grid grid;
    std::size_t steps;
    ModeBasis basis;
    PropagationResult lab, com;
  };
  std::vector<Level> levels(2);
  levels[0].grid = s.grid;
  levels[0].steps = c.grid.steps;
  levels[1].grid = s.grid.refined();
  levels[1].steps = 2 * c.grid.steps;
  for (Level& l : levels) l.basis = solve_modes(s.spec, pol, l.grid, 1);

  parallel_for(4, threads, [&](std::size_t task) {
    Level& l = levels[task / 2];
    const Frame frame = task % 2 == 0 ? Frame::Lab : Frame::Comoving;
    PropagationResult res = propagate(mode_field(l.basis, 0, frame, 0.0), make_potential(s, frame, c), 0.0, T,
                                      l.steps, l.basis, quiet_options());
    (frame == Frame::Lab ? l.lab : l.com) = std::move(res);
  });

  CovarianceReport rep;
  rep.points = s.grid.points;
  rep.steps = c.grid.steps;
  double residual[2];
  for (std::size_t i = 0; i < 2; ++i) {
    const ScalarField mapped = gauge_map(levels[i].com.final_field, s.bend, s.spec, T);
    residual[i] = relative_l2_distance(levels[i].lab.final_field, mapped);
  }
  rep.residual = residual[0];
  rep.residual_refined = residual[1];
  rep.dx = levels[0].grid.dx();
  rep.dx_refined = levels[1].grid.dx();
  rep.order = std::log(residual[0] / residual[1]) / std::log(rep.dx / rep.dx_refined);
  rep.phase_lab = extract_phase(levels[0].lab, levels[0].basis);
  rep.phase_comoving = extract_phase(levels[0].com, levels[0].basis);
  rep.phi_m = geometry::phi_m(s.bend, s.spec.effective_index(pol), s.spec.k(), T);
  rep.ground_population = levels[0].com.ground_population;
  rep.norm_drift_lab = levels[0].lab.radiation_loss;
  return rep;
}

AdiabaticityReport adiabaticity_report(const ExperimentConfig& c) {
  const Polarization pol = std::holds_alternative<AdiabaticityRun>(c.run)
                               ? std::get<AdiabaticityRun>(c.run).polarization
                               : Polarization::H;
  Setup s = setup(c);
  AdiabaticityReport rep;
  rep.bound_states = count_bound_states(s.spec, pol, s.grid);
  const ModeBasis basis = solve_modes(s.spec, pol, s.grid, rep.bound_states);
  for (const Mode& m : basis.modes) rep.energies.push_back(m.energy);
  if (rep.bound_states > 1) rep.amplitudes = transition_amplitudes(basis, s.bend, s.spec, rep.bound_states - 1);
  for (const cplx& a : rep.amplitudes) rep.first_order_loss += std::norm(a);

  const PropagationResult res = propagate(mode_field(basis, 0, Frame::Comoving, 0.0),
                                          make_potential(s, Frame::Comoving, c), 0.0, s.bend.length(),
                                          c.grid.steps, basis, quiet_options());
  rep.ground_population = res.ground_population;
  rep.simulated_loss = 1.0 - res.ground_population;
  rep.radiation_loss = res.radiation_loss;
  return rep;
}

RunReport run_experiment(const ExperimentConfig& c, const RunOptions& options) {
  validate(c);
  RunReport r;
  r.kind = run_kind(c.run);
  const fs::path out = options.output_directory.empty() ? fs::path(c.output_directory) : options.output_directory;
  if (options.write_files) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw Error("cannot create output directory " + out.string() + ": " + ec.message());
  }
  const bool write = options.write_files;

  if (const auto* run = std::get_if<ModesRun>(&c.run)) {
    run_modes(c, *run, out, write, r);
  } else if (const auto* run = std::get_if<PropagateRun>(&c.run)) {
    run_propagate(c, *run, out, write, r);
  } else if (const auto* run = std::get_if<CovarianceRun>(&c.run)) {
    (void)run;
    const CovarianceReport rep = covariance_report(c, options.threads);
    r.add("points", static_cast<double>(rep.points));
    r.add("steps", static_cast<double>(rep.steps));
    r.add("covariance_residual", rep.residual);
    r.add("covariance_residual_refined", rep.residual_refined);
    r.add("convergence_order", rep.order);
    r.add("phase_lab_rad", rep.phase_lab);
    r.add("phase_comoving_rad", rep.phase_comoving);
    r.add("phase_difference_rad", rep.phase_lab - rep.phase_comoving);
    r.add("phi_m_rad", rep.phi_m);
    r.add("ground_population", rep.ground_population);
    if (write) {
      io::CsvWriter csv(out / "covariance.csv", {"points", "steps", "dx_m", "residual"});
      csv.row({static_cast<double>(rep.points), static_cast<double>(rep.steps), rep.dx, rep.residual});
      csv.row({static_cast<double>(2 * (rep.points - 1) + 1), static_cast<double>(2 * rep.steps), rep.dx_refined,
               rep.residual_refined});
      r.files.push_back(out / "covariance.csv");
    }
  } else if (std::holds_alternative<HomPointRun>(c.run)) {
    run_hom_point(c, r);
  } else if (const auto* run = std::get_if<HomSweepRun>(&c.run)) {
    run_hom_sweep(c, *run, out, write, options.threads, r);
  } else {
    const AdiabaticityReport rep = adiabaticity_report(c);
    r.add("bound_states", static_cast<double>(rep.bound_states));
    r.add("first_order_loss", rep.first_order_loss);
    r.add("simulated_loss", rep.simulated_loss);
    r.add("ground_population", rep.ground_population);
    r.add("radiation_loss", rep.radiation_loss);
    if (rep.simulated_loss > 0.0) r.add("loss_ratio", rep.first_order_loss / rep.simulated_loss);
    if (write) {
      io::CsvWriter csv(out / "transitions.csv", {"n", "E_n", "re_c_n", "im_c_n", "abs_c_n_sq"});
      for (std::size_t n = 1; n < rep.bound_states; ++n) {
        const cplx a = rep.amplitudes[n - 1];
        csv.row({static_cast<double>(n), rep.energies[n], a.real(), a.imag(), std::norm(a)});
      }
      r.files.push_back(out / "transitions.csv");
    }
  }

  if (write) {
    std::ofstream(out / "config.json") << serialize_config(c);
    write_summary(c, r, out);
  }
  return r;
}

}  // namespace curvelight::experiment
