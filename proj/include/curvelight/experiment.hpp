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
#include <utility>
#include <vector>

#include "curvelight/config.hpp"

namespace curvelight::experiment {

/// Named results of one run, in the order they were produced.
struct RunReport {
  std::string kind;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::filesystem::path> files;

  /// Throws std::out_of_range for an unknown key.
  double value(const std::string& key) const;
  void add(std::string key, double v) { values.emplace_back(std::move(key), v); }
  void note(std::string key, std::string v) { notes.emplace_back(std::move(key), std::move(v)); }
};

struct RunOptions {
  /// Where artifacts go; empty means the config's output.directory.
  std::filesystem::path output_directory;
  /// Worker threads for independent sub-runs; 0 picks the hardware count.
  unsigned threads = 0;
  /// Skip writing files (used by tests that only need the numbers).
  bool write_files = true;
};

/// Executes the configured run, writes its CSV artifacts and, last, a
/// human-readable summary.txt.
RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

struct CovarianceReport {
  std::size_t points = 0;
  std::size_t steps = 0;
  double residual = 0.0;         // at the config grid
  double residual_refined = 0.0; // 2x in x and z
  double dx = 0.0;
  double dx_refined = 0.0;
  double order = 0.0;            // log(r / r_refined) / log(dx / dx_refined)
  double phase_lab = 0.0;
  double phase_comoving = 0.0;
  double phi_m = 0.0;
  double ground_population = 0.0;
  double norm_drift_lab = 0.0;
};

/// Lab-frame propagation against the gauge-mapped comoving propagation at
/// z = T, at the config grid and one refinement.
CovarianceReport covariance_report(const ExperimentConfig& config, unsigned threads = 0);

struct AdiabaticityReport {
  std::size_t bound_states = 0;
  double first_order_loss = 0.0;     // sum_{n>=1} |c_n(T)|^2
  double simulated_loss = 0.0;       // 1 - ground population
  double ground_population = 0.0;
  double radiation_loss = 0.0;
  std::vector<double> energies;
  std::vector<cplx> amplitudes;      // c_1 .. c_{bound-1}
};

AdiabaticityReport adiabaticity_report(const ExperimentConfig& config);

/// Runs `fn(i)` for i in [0, count) on up to `threads` workers (0: hardware
/// count). Exceptions are rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn);

}  // namespace curvelight::experiment

#include "curvelight/detail/parallel.hpp"
