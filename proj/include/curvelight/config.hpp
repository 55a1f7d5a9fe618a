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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curvelight/geometry.hpp"
#include "curvelight/grid.hpp"
#include "curvelight/propagation.hpp"
#include "curvelight/waveguide.hpp"

namespace curvelight::experiment {

struct IndexConfig {
  std::string kind = "gaussian";  // "gaussian" | "tabulated"
  double delta_n = 3e-3;
  double width_m = 3e-6;
  std::string file;               // tabulated: CSV of (x_m, n)
  bool operator==(const IndexConfig&) const = default;
};

struct WaveguideConfig {
  double wavelength_m = 815e-9;
  double n_s_h = 1.45005;
  double n_s_v = 1.44995;
  IndexConfig index_profile;
  bool operator==(const WaveguideConfig&) const = default;
};

struct BendConfig {
  std::string kind = "sinusoidal";  // "sinusoidal" | "zero" | "tabulated"
  double amplitude_m = 0.0;
  double length_m = 0.08;
  std::string file;                 // tabulated: CSV of (z_m, xi_m)
  bool operator==(const BendConfig&) const = default;
};

struct GridConfig {
  std::optional<double> x_min_m;    // default: spans the bend plus a margin
  std::optional<double> x_max_m;
  std::size_t points = 4096;
  std::size_t steps = 20000;
  bool operator==(const GridConfig&) const = default;
};

struct ModesRun {
  Polarization polarization = Polarization::H;
  std::size_t n_modes = 0;          // 0: every bound state
  bool operator==(const ModesRun&) const = default;
};

struct PropagateRun {
  Frame frame = Frame::Comoving;
  Polarization polarization = Polarization::H;
  std::vector<double> snapshots_m;
  bool operator==(const PropagateRun&) const = default;
};

struct CovarianceRun {
  Polarization polarization = Polarization::H;
  bool operator==(const CovarianceRun&) const = default;
};

struct HomPointRun {
  bool operator==(const HomPointRun&) const = default;
};

struct HomSweepRun {
  double amplitude_min_m = 0.0;
  double amplitude_max_m = 8e-3;
  std::size_t points = 81;
  bool operator==(const HomSweepRun&) const = default;
};

struct AdiabaticityRun {
  Polarization polarization = Polarization::H;
  bool operator==(const AdiabaticityRun&) const = default;
};

using RunConfig = std::variant<ModesRun, PropagateRun, CovarianceRun, HomPointRun, HomSweepRun, AdiabaticityRun>;

std::string run_kind(const RunConfig& run);

struct ExperimentConfig {
  WaveguideConfig waveguide;
  BendConfig bend;
  GridConfig grid;
  std::optional<AbsorberSpec> absorber;
  RunConfig run = HomPointRun{};
  std::string output_directory = "out";
  std::uint64_t seed = 0;
  /// Directory that relative data-file paths are resolved against. Not
  /// serialized.
  std::filesystem::path base_directory;

  bool operator==(const ExperimentConfig& o) const {
    return waveguide == o.waveguide && bend == o.bend && grid == o.grid && absorber == o.absorber &&
           run == o.run && output_directory == o.output_directory && seed == o.seed;
  }
};

/// Parses JSON text. Unknown keys, wrong types and out-of-range values raise
/// ConfigError naming the field path, e.g. "grid.points".
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_directory = {});
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& config);

/// Range checks on an already-parsed config (parse_config calls it).
void validate(const ExperimentConfig& config);

/// Builders resolving data files; their errors are ConfigErrors.
WaveguideSpec build_waveguide(const ExperimentConfig& config);
geometry::BendProfile build_bend(const ExperimentConfig& config);

/// The config's grid, or the default: the bend's transverse range widened by
/// max(50 um, core extent) on each side.
Grid build_grid(const ExperimentConfig& config, const WaveguideSpec& spec, const geometry::BendProfile& bend);

}  // namespace curvelight::experiment
