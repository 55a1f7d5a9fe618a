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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = CURVELIGHT_CLI_PATH;
const fs::path kConfigs = CURVELIGHT_CONFIG_DIR;

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + kCli + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("curvelight_cli_" + name);
  fs::remove_all(p);
  return p;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream(dir / name) << text;
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, ValidateShippedConfigs) {
  for (const auto& e : fs::directory_iterator(kConfigs)) {
    if (e.path().extension() != ".json") continue;
    EXPECT_EQ(run("validate '" + e.path().string() + "'"), 0) << e.path();
  }
}

TEST(Cli, BadConfigExitsWithTwo) {
  const fs::path dir = scratch("bad");
  const fs::path cfg = write(dir, "bad.json", R"({"waveguide": {}, "bend": {"kind": "zero", "length_m": -1},
    "run": {"kind": "hom_point"}, "output": {"directory": "o"}})");
  EXPECT_EQ(run("validate '" + cfg.string() + "'"), 2);
  EXPECT_EQ(run("run '" + cfg.string() + "'"), 2);
  EXPECT_EQ(run("run '" + (dir / "missing.json").string() + "'"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST(Cli, StepGuardExitsWithThree) {
  const fs::path dir = scratch("guard");
  const fs::path cfg = write(dir, "guard.json", R"({"waveguide": {}, "bend": {"kind": "zero", "length_m": 0.08},
    "grid": {"points": 1024, "steps": 10}, "run": {"kind": "propagate"}, "output": {"directory": "o"}})");
  EXPECT_EQ(run("run '" + cfg.string() + "' --out '" + (dir / "out").string() + "'"), 3);
}

TEST(Cli, RunWritesArtifactsAndHonoursOutputPrecedence) {
  const fs::path dir = scratch("prec");
  const fs::path env_dir = dir / "from_env";
  const fs::path flag_dir = dir / "from_flag";
  const std::string cfg = (kConfigs / "hom_point.json").string();
  const std::string env = "CURVELIGHT_OUTPUT_DIR='" + env_dir.string() + "'";

  ASSERT_EQ(run("run '" + cfg + "'", env), 0);
  EXPECT_TRUE(fs::exists(env_dir / "summary.txt"));
  EXPECT_TRUE(fs::exists(env_dir / "config.json"));

  ASSERT_EQ(run("run '" + cfg + "' --out '" + flag_dir.string() + "' --seed 9", env), 0);
  EXPECT_TRUE(fs::exists(flag_dir / "summary.txt"));
  EXPECT_NE(slurp(flag_dir / "config.json").find("\"seed\": 9"), std::string::npos);
}

TEST(Cli, RunsAreByteIdentical) {
  const fs::path dir = scratch("det");
  const std::string cfg = (kConfigs / "hom_sweep.json").string();
  ASSERT_EQ(run("run '" + cfg + "' --out '" + (dir / "a").string() + "' --threads 1"), 0);
  ASSERT_EQ(run("run '" + cfg + "' --out '" + (dir / "b").string() + "' --threads 4"), 0);
  const std::string a = slurp(dir / "a" / "hom_sweep.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b" / "hom_sweep.csv"));
  EXPECT_EQ(a.substr(0, a.find('\n')), "A_m,excess_path_m,delta_phi_rad,P11");
}

}  // namespace
