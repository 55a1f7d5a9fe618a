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


// curvelight run <config> [--out DIR] [--seed N] [--threads K]
// curvelight validate <config>
//
// Exit status: 0 success, 2 config error, 3 numerical guard, 1 anything else.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "curvelight/config.hpp"
#include "curvelight/csv.hpp"
#include "curvelight/error.hpp"
#include "curvelight/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

int report(const std::exception& e, int code) {
  std::cerr << "curvelight: " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paraxial propagation in curved birefringent waveguides and two-photon interference"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;

  CLI::App* run = app.add_subcommand("run", "Execute an experiment config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides CURVELIGHT_OUTPUT_DIR and the config)");
  run->add_option("--seed", seed, "Seed recorded with the outputs");
  run->add_option("--threads", threads, "Worker threads for independent sub-runs (0: all cores)");

  CLI::App* check = app.add_subcommand("validate", "Parse and check a config without running it");
  check->add_option("config", config_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  namespace ex = curvelight::experiment;
  try {
    ex::ExperimentConfig config = ex::load_config(config_path);
    if (*check) {
      ex::build_waveguide(config);
      ex::build_bend(config);
      std::cout << config_path << ": ok (" << ex::run_kind(config.run) << ")\n";
      return kExitOk;
    }
    if (seed) config.seed = *seed;
    ex::RunOptions options;
    options.threads = threads;
    if (!out_dir.empty()) {
      options.output_directory = out_dir;
    } else if (const char* env = std::getenv("CURVELIGHT_OUTPUT_DIR"); env != nullptr && *env != '\0') {
      options.output_directory = env;
    }
    const ex::RunReport r = ex::run_experiment(config, options);
    for (const auto& [k, v] : r.values) std::cout << k << ": " << curvelight::io::format_double(v) << "\n";
    for (const auto& [k, v] : r.notes) std::cout << k << ": " << v << "\n";
    return kExitOk;
  } catch (const curvelight::ConfigError& e) {
    return report(e, kExitConfig);
  } catch (const curvelight::StepGuardError& e) {
    return report(e, kExitGuard);
  } catch (const curvelight::GridError& e) {
    return report(e, kExitGuard);
  } catch (const curvelight::NonAdiabaticField& e) {
    return report(e, kExitGuard);
  } catch (const curvelight::InsufficientBoundStates& e) {
    return report(e, kExitGuard);
  } catch (const std::exception& e) {
    return report(e, kExitOther);
  }
}
