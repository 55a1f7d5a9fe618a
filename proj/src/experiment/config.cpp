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
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "curvelight/config.hpp"
#include "curvelight/error.hpp"

namespace curvelight::experiment {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Read access to one JSON object that remembers where it sits in the tree
// and which keys were consumed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const { return j_.contains(key); }

  Reader object(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(join(path_, key), "missing");
    return Reader(j_.at(key), join(path_, key));
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(join(path_, key), "missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
    return v.get<double>();
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!j_.contains(key)) {
      seen_.insert(key);
      return std::nullopt;
    }
    return number(key);
  }

  std::uint64_t count(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(join(path_, key), "missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0)) {
      throw ConfigError(join(path_, key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(join(path_, key), "missing");
    }
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(join(path_, key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    seen_.insert(key);
    std::vector<double> out;
    if (!j_.contains(key)) return out;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(join(path_, key), "expected an array of numbers");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(join(path_, key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(join(path_, key), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Polarization parse_polarization(Reader& r) {
  const std::string p = r.text("polarization", "H");
  if (p == "H") return Polarization::H;
  if (p == "V") return Polarization::V;
  throw ConfigError(join(r.path(), "polarization"), "expected \"H\" or \"V\"");
}

Frame parse_frame(Reader& r) {
  const std::string f = r.text("frame", "comoving");
  if (f == "lab") return Frame::Lab;
  if (f == "comoving") return Frame::Comoving;
  throw ConfigError(join(r.path(), "frame"), "expected \"lab\" or \"comoving\"");
}

RunConfig parse_run(Reader r) {
  const std::string kind = r.text("kind");
  RunConfig run;
  if (kind == "modes") {
    ModesRun m;
    m.polarization = parse_polarization(r);
    m.n_modes = r.count("n_modes", 0);
    run = m;
  } else if (kind == "propagate") {
    PropagateRun p;
    p.frame = parse_frame(r);
    p.polarization = parse_polarization(r);
    p.snapshots_m = r.numbers("snapshots_m");
    run = p;
  } else if (kind == "covariance_check") {
    run = CovarianceRun{parse_polarization(r)};
  } else if (kind == "hom_point") {
    run = HomPointRun{};
  } else if (kind == "hom_sweep") {
    HomSweepRun s;
    s.amplitude_min_m = r.number("amplitude_min_m");
    s.amplitude_max_m = r.number("amplitude_max_m");
    s.points = r.count("points");
    run = s;
  } else if (kind == "adiabaticity") {
    run = AdiabaticityRun{parse_polarization(r)};
  } else {
    throw ConfigError(join(r.path(), "kind"),
                      "unknown run kind \"" + kind +
                          "\" (modes, propagate, covariance_check, hom_point, hom_sweep, adiabaticity)");
  }
  r.finish();
  return run;
}

std::string to_text(Polarization p) { return std::string(to_string(p)); }

void require(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string run_kind(const RunConfig& run) {
  static const char* names[] = {"modes", "propagate", "covariance_check", "hom_point", "hom_sweep", "adiabaticity"};
  return names[run.index()];
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_directory) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  ExperimentConfig c;
  c.base_directory = base_directory;
  Reader top(root, "");

  {
    Reader w = top.object("waveguide");
    c.waveguide.wavelength_m = w.number("wavelength_m", c.waveguide.wavelength_m);
    c.waveguide.n_s_h = w.number("n_s_h", c.waveguide.n_s_h);
    c.waveguide.n_s_v = w.number("n_s_v", c.waveguide.n_s_v);
    if (w.has("index_profile")) {
      Reader p = w.object("index_profile");
      c.waveguide.index_profile.kind = p.text("kind", "gaussian");
      if (c.waveguide.index_profile.kind == "gaussian") {
        c.waveguide.index_profile.delta_n = p.number("delta_n", 3e-3);
        c.waveguide.index_profile.width_m = p.number("width_m", 3e-6);
      } else if (c.waveguide.index_profile.kind == "tabulated") {
        c.waveguide.index_profile.file = p.text("file");
      } else {
        throw ConfigError(join(p.path(), "kind"), "expected \"gaussian\" or \"tabulated\"");
      }
      p.finish();
    }
    w.finish();
  }
  {
    Reader b = top.object("bend");
    c.bend.kind = b.text("kind");
    if (c.bend.kind == "sinusoidal") {
      c.bend.amplitude_m = b.number("amplitude_m");
      c.bend.length_m = b.number("length_m");
    } else if (c.bend.kind == "zero") {
      c.bend.length_m = b.number("length_m");
    } else if (c.bend.kind == "tabulated") {
      c.bend.file = b.text("file");
    } else {
      throw ConfigError(join(b.path(), "kind"), "expected \"sinusoidal\", \"zero\" or \"tabulated\"");
    }
    b.finish();
  }
  if (top.has("grid")) {
    Reader g = top.object("grid");
    c.grid.x_min_m = g.optional_number("x_min_m");
    c.grid.x_max_m = g.optional_number("x_max_m");
    c.grid.points = g.count("points", c.grid.points);
    c.grid.steps = g.count("steps", c.grid.steps);
    g.finish();
  }
  if (top.has("absorber")) {
    Reader a = top.object("absorber");
    AbsorberSpec s;
    s.start = a.number("start_m");
    s.width = a.number("width_m");
    s.strength = a.number("strength_per_m");
    a.finish();
    c.absorber = s;
  }
  c.run = parse_run(top.object("run"));
  {
    Reader o = top.object("output");
    c.output_directory = o.text("directory");
    o.finish();
  }
  c.seed = top.count("seed", 0);
  top.finish();
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

void validate(const ExperimentConfig& c) {
  const auto& w = c.waveguide;
  require(positive(w.wavelength_m), "waveguide.wavelength_m", "must be positive");
  require(positive(w.n_s_h), "waveguide.n_s_h", "must be positive");
  require(positive(w.n_s_v), "waveguide.n_s_v", "must be positive");
  require(std::abs(w.n_s_h - w.n_s_v) <= 1e-2 * 0.5 * (w.n_s_h + w.n_s_v), "waveguide.n_s_v",
          "birefringence |n_s_h - n_s_v| must stay below 1e-2 n_s");
  if (w.index_profile.kind == "gaussian") {
    require(positive(w.index_profile.delta_n), "waveguide.index_profile.delta_n", "must be positive");
    require(positive(w.index_profile.width_m), "waveguide.index_profile.width_m", "must be positive");
  } else {
    require(!w.index_profile.file.empty(), "waveguide.index_profile.file", "must name a CSV file");
  }

  if (c.bend.kind == "tabulated") {
    require(!c.bend.file.empty(), "bend.file", "must name a CSV file");
  } else {
    require(positive(c.bend.length_m), "bend.length_m", "must be positive");
    require(std::isfinite(c.bend.amplitude_m) && c.bend.amplitude_m >= 0.0, "bend.amplitude_m",
            "must be non-negative");
  }

  const auto& g = c.grid;
  require(g.points >= 256 && (g.points & (g.points - 1)) == 0, "grid.points", "must be a power of two >= 256");
  require(g.steps >= 1, "grid.steps", "must be positive");
  require(g.x_min_m.has_value() == g.x_max_m.has_value(), g.x_min_m ? "grid.x_max_m" : "grid.x_min_m",
          "x_min_m and x_max_m must be given together");
  if (g.x_min_m && g.x_max_m) {
    require(std::isfinite(*g.x_min_m), "grid.x_min_m", "must be finite");
    require(std::isfinite(*g.x_max_m) && *g.x_max_m > *g.x_min_m, "grid.x_max_m", "must exceed x_min_m");
  }

  if (c.absorber) {
    require(positive(c.absorber->start), "absorber.start_m", "must be positive");
    require(positive(c.absorber->width), "absorber.width_m", "must be positive");
    require(positive(c.absorber->strength), "absorber.strength_per_m", "must be positive");
  }

  if (const auto* s = std::get_if<HomSweepRun>(&c.run)) {
    require(std::isfinite(s->amplitude_min_m) && s->amplitude_min_m >= 0.0, "run.amplitude_min_m",
            "must be non-negative");
    require(std::isfinite(s->amplitude_max_m) && s->amplitude_max_m > s->amplitude_min_m, "run.amplitude_max_m",
            "must exceed amplitude_min_m");
    require(s->points >= 2, "run.points", "must be at least 2");
  }
  if (const auto* p = std::get_if<PropagateRun>(&c.run)) {
    for (std::size_t i = 0; i < p->snapshots_m.size(); ++i) {
      require(std::isfinite(p->snapshots_m[i]) && p->snapshots_m[i] >= 0.0 &&
                  (c.bend.kind == "tabulated" || p->snapshots_m[i] <= c.bend.length_m),
              "run.snapshots_m[" + std::to_string(i) + "]", "must lie inside [0, length_m]");
    }
  }
  require(!c.output_directory.empty(), "output.directory", "must not be empty");
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  json& w = j["waveguide"];
  w["wavelength_m"] = c.waveguide.wavelength_m;
  w["n_s_h"] = c.waveguide.n_s_h;
  w["n_s_v"] = c.waveguide.n_s_v;
  json& p = w["index_profile"];
  p["kind"] = c.waveguide.index_profile.kind;
  if (c.waveguide.index_profile.kind == "gaussian") {
    p["delta_n"] = c.waveguide.index_profile.delta_n;
    p["width_m"] = c.waveguide.index_profile.width_m;
  } else {
    p["file"] = c.waveguide.index_profile.file;
  }

  json& b = j["bend"];
  b["kind"] = c.bend.kind;
  if (c.bend.kind == "sinusoidal") {
    b["amplitude_m"] = c.bend.amplitude_m;
    b["length_m"] = c.bend.length_m;
  } else if (c.bend.kind == "zero") {
    b["length_m"] = c.bend.length_m;
  } else {
    b["file"] = c.bend.file;
  }

  json& g = j["grid"];
  if (c.grid.x_min_m) g["x_min_m"] = *c.grid.x_min_m;
  if (c.grid.x_max_m) g["x_max_m"] = *c.grid.x_max_m;
  g["points"] = c.grid.points;
  g["steps"] = c.grid.steps;

  if (c.absorber) {
    j["absorber"] = {{"start_m", c.absorber->start},
                     {"width_m", c.absorber->width},
                     {"strength_per_m", c.absorber->strength}};
  }

  json r;
  r["kind"] = run_kind(c.run);
  std::visit(
      [&](const auto& run) {
        using T = std::decay_t<decltype(run)>;
        if constexpr (std::is_same_v<T, ModesRun>) {
          r["polarization"] = to_text(run.polarization);
          r["n_modes"] = run.n_modes;
        } else if constexpr (std::is_same_v<T, PropagateRun>) {
          r["frame"] = std::string(to_string(run.frame));
          r["polarization"] = to_text(run.polarization);
          if (!run.snapshots_m.empty()) r["snapshots_m"] = run.snapshots_m;
        } else if constexpr (std::is_same_v<T, CovarianceRun> || std::is_same_v<T, AdiabaticityRun>) {
          r["polarization"] = to_text(run.polarization);
        } else if constexpr (std::is_same_v<T, HomSweepRun>) {
          r["amplitude_min_m"] = run.amplitude_min_m;
          r["amplitude_max_m"] = run.amplitude_max_m;
          r["points"] = run.points;
        }
      },
      c.run);
  j["run"] = r;
  j["output"] = {{"directory", c.output_directory}};
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

WaveguideSpec build_waveguide(const ExperimentConfig& c) {
  WaveguideSpec s;
  s.wavelength = c.waveguide.wavelength_m;
  s.n_s_h = c.waveguide.n_s_h;
  s.n_s_v = c.waveguide.n_s_v;
  if (c.waveguide.index_profile.kind == "gaussian") {
    s.index = GaussianIndex{c.waveguide.index_profile.delta_n, c.waveguide.index_profile.width_m};
  } else {
    try {
      s.index = load_index_csv(c.base_directory / c.waveguide.index_profile.file, s.nominal_index());
    } catch (const DomainError& e) {
      throw ConfigError("waveguide.index_profile.file", e.what());
    }
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError("waveguide", e.what());
  }
  return s;
}

geometry::BendProfile build_bend(const ExperimentConfig& c) {
  try {
    if (c.bend.kind == "sinusoidal") return geometry::BendProfile::sinusoidal(c.bend.amplitude_m, c.bend.length_m);
    if (c.bend.kind == "zero") return geometry::BendProfile::straight(c.bend.length_m);
    return geometry::load_bend_csv(c.base_directory / c.bend.file);
  } catch (const DomainError& e) {
    throw ConfigError(c.bend.kind == "tabulated" ? "bend.file" : "bend", e.what());
  }
}

Grid build_grid(const ExperimentConfig& c, const WaveguideSpec& spec, const geometry::BendProfile& bend) {
  if (c.grid.x_min_m && c.grid.x_max_m) return {*c.grid.x_min_m, *c.grid.x_max_m, c.grid.points};
  const double margin = std::max(50e-6, spec.core_extent());
  return {bend.min_displacement() - margin, bend.max_displacement() + margin, c.grid.points};
}

}  // namespace curvelight::experiment
