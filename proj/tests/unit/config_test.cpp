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

#include <filesystem>
#include <fstream>

#include "curvelight/error.hpp"
#include "curvelight/config.hpp"
#include "json.hpp"

namespace curvelight::experiment {
namespace {

using nlohmann::json;

const char* kFull = R"({
  "waveguide": {
    "wavelength_m": 815e-9, "n_s_h": 1.45005, "n_s_v": 1.44995,
    "index_profile": {"kind": "gaussian", "delta_n": 3e-3, "width_m": 3e-6}
  },
  "bend": {"kind": "sinusoidal", "amplitude_m": 25e-6, "length_m": 0.08},
  "grid": {"x_min_m": -50e-6, "x_max_m": 100e-6, "points": 4096, "steps": 20000},
  "absorber": {"start_m": 28e-6, "width_m": 15e-6, "strength_per_m": 5e4},
  "run": {"kind": "propagate", "frame": "lab", "polarization": "V", "snapshots_m": [0.02, 0.04]},
  "output": {"directory": "out/x"},
  "seed": 17
})";

std::string mutate(const std::string& pointer, const json& value) {
  json j = json::parse(kFull);
  j[json::json_pointer(pointer)] = value;
  return j.dump();
}

std::string erase(const std::string& parent, const std::string& key) {
  json j = json::parse(kFull);
  j[json::json_pointer(parent)].erase(key);
  return j.dump();
}

std::string error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Config, ParsesEveryField) {
  const ExperimentConfig c = parse_config(kFull);
  EXPECT_EQ(c.waveguide.n_s_v, 1.44995);
  EXPECT_EQ(c.bend.amplitude_m, 25e-6);
  ASSERT_TRUE(c.grid.x_min_m.has_value());
  EXPECT_EQ(*c.grid.x_min_m, -50e-6);
  EXPECT_EQ(c.grid.points, 4096u);
  ASSERT_TRUE(c.absorber.has_value());
  EXPECT_EQ(c.absorber->strength, 5e4);
  const auto& p = std::get<PropagateRun>(c.run);
  EXPECT_EQ(p.frame, Frame::Lab);
  EXPECT_EQ(p.polarization, Polarization::V);
  EXPECT_EQ(p.snapshots_m, (std::vector<double>{0.02, 0.04}));
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(run_kind(c.run), "propagate");
}

TEST(Config, RoundTripIsLossless) {
  const ExperimentConfig c = parse_config(kFull);
  const std::string text = serialize_config(c);
  EXPECT_EQ(parse_config(text), c);
  EXPECT_EQ(serialize_config(parse_config(text)), text);
}

TEST(Config, ShippedFixturesRoundTrip) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(CURVELIGHT_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const ExperimentConfig c = load_config(entry.path());
    EXPECT_EQ(parse_config(serialize_config(c)), c) << entry.path();
    ++seen;
  }
  EXPECT_GE(seen, 6u);
}

TEST(Config, DefaultsFillOptionalSections) {
  const ExperimentConfig c = parse_config(R"({
    "waveguide": {}, "bend": {"kind": "zero", "length_m": 0.08},
    "run": {"kind": "hom_point"}, "output": {"directory": "o"}})");
  EXPECT_EQ(c.waveguide.wavelength_m, 815e-9);
  EXPECT_EQ(c.grid.points, 4096u);
  EXPECT_FALSE(c.absorber.has_value());
  EXPECT_EQ(c.seed, 0u);
}

struct Mutation {
  std::string pointer;
  json value;
  std::string path;
};

TEST(Config, EachInvalidFieldIsNamed) {
  const std::vector<Mutation> cases = {
      {"/waveguide/wavelength_m", -1.0, "waveguide.wavelength_m"},
      {"/waveguide/wavelength_m", "x", "waveguide.wavelength_m"},
      {"/waveguide/n_s_h", 0.0, "waveguide.n_s_h"},
      {"/waveguide/n_s_v", 1.6, "waveguide.n_s_v"},
      {"/waveguide/index_profile/kind", "step", "waveguide.index_profile.kind"},
      {"/waveguide/index_profile/delta_n", -3e-3, "waveguide.index_profile.delta_n"},
      {"/waveguide/index_profile/width_m", 0.0, "waveguide.index_profile.width_m"},
      {"/bend/kind", "spiral", "bend.kind"},
      {"/bend/amplitude_m", -1e-3, "bend.amplitude_m"},
      {"/bend/length_m", 0.0, "bend.length_m"},
      {"/grid/points", 3000, "grid.points"},
      {"/grid/points", 128, "grid.points"},
      {"/grid/points", -4, "grid.points"},
      {"/grid/steps", 0, "grid.steps"},
      {"/grid/x_max_m", -60e-6, "grid.x_max_m"},
      {"/absorber/start_m", 0.0, "absorber.start_m"},
      {"/absorber/width_m", -1.0, "absorber.width_m"},
      {"/absorber/strength_per_m", 0.0, "absorber.strength_per_m"},
      {"/run/kind", "teleport", "run.kind"},
      {"/run/frame", "rotating", "run.frame"},
      {"/run/polarization", "D", "run.polarization"},
      {"/run/snapshots_m", json::array({0.02, 0.5}), "run.snapshots_m[1]"},
      {"/run/snapshots_m", json::array({0.02, "a"}), "run.snapshots_m[1]"},
      {"/output/directory", "", "output.directory"},
      {"/seed", -1, "seed"},
  };
  for (const Mutation& m : cases) EXPECT_EQ(error_path(mutate(m.pointer, m.value)), m.path) << m.pointer;
}

TEST(Config, MissingRequiredFields) {
  EXPECT_EQ(error_path(erase("/bend", "kind")), "bend.kind");
  EXPECT_EQ(error_path(erase("/bend", "length_m")), "bend.length_m");
  EXPECT_EQ(error_path(erase("", "run")), "run");
  EXPECT_EQ(error_path(erase("", "output")), "output");
  EXPECT_EQ(error_path(erase("/grid", "x_max_m")), "grid.x_max_m");
  EXPECT_EQ(error_path(erase("/absorber", "width_m")), "absorber.width_m");
}

TEST(Config, UnknownKeysAreRejected) {
  EXPECT_EQ(error_path(mutate("/grid/pionts", 4096)), "grid.pionts");
  EXPECT_EQ(error_path(mutate("/extra", 1)), "extra");
  EXPECT_EQ(error_path(mutate("/run/n_modes", 2)), "run.n_modes");
}

TEST(Config, SweepBoundsAreChecked) {
  const std::string base = R"({"waveguide": {}, "bend": {"kind": "sinusoidal", "amplitude_m": 0, "length_m": 0.08},
    "output": {"directory": "o"}, "run": )";
  EXPECT_EQ(error_path(base + R"({"kind": "hom_sweep", "amplitude_min_m": 0, "amplitude_max_m": 0, "points": 5}})"),
            "run.amplitude_max_m");
  EXPECT_EQ(error_path(base + R"({"kind": "hom_sweep", "amplitude_min_m": 0, "amplitude_max_m": 1e-3, "points": 1}})"),
            "run.points");
}

TEST(Config, MalformedJson) {
  try {
    parse_config("{\"waveguide\": ");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed JSON"), std::string::npos);
  }
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, MissingDataFileIsAConfigError) {
  const ExperimentConfig c = parse_config(R"({"waveguide": {}, "bend": {"kind": "tabulated", "file": "nope.csv"},
    "run": {"kind": "hom_point"}, "output": {"directory": "o"}})",
                                          std::filesystem::temp_directory_path());
  try {
    build_bend(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "bend.file");
  }
}

TEST(Config, DefaultGridSpansTheBend) {
  const ExperimentConfig c = parse_config(R"({"waveguide": {}, "bend": {"kind": "sinusoidal", "amplitude_m": 25e-6,
    "length_m": 0.08}, "run": {"kind": "hom_point"}, "output": {"directory": "o"}})");
  const WaveguideSpec w = build_waveguide(c);
  const geometry::BendProfile b = build_bend(c);
  const Grid g = build_grid(c, w, b);
  EXPECT_NEAR(g.x_min, -50e-6, 1e-18);
  EXPECT_NEAR(g.x_max, 25e-6 * 2.0 + 50e-6, 1e-18);
  EXPECT_EQ(g.points, 4096u);
}

}  // namespace
}  // namespace curvelight::experiment
