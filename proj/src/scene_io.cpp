// Copyright 2026 The nlm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlm/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlm/error.hpp"

namespace nlm {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void format_error(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kSceneFormat, key + ": " + what);
}

// Reads the members of one JSON object, remembering which keys were used so
// that leftovers can be reported as unknown.
class Fields {
 public:
  Fields(const Json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) format_error(path_, "expected an object");
  }

  bool has(const std::string& key) const { return object_.contains(key); }

  const Json* get(const std::string& key) {
    used_.insert(key);
    const auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  std::optional<double> number(const std::string& key) {
    const Json* value = get(key);
    if (!value) return std::nullopt;
    if (!value->is_number()) format_error(name(key), "expected a number");
    const double out = value->get<double>();
    if (!std::isfinite(out)) format_error(name(key), "expected a finite number");
    return out;
  }

  double number(const std::string& key, double fallback) { return number(key).value_or(fallback); }

  double required_number(const std::string& key) {
    const auto value = number(key);
    if (!value) format_error(name(key), "missing required key");
    return *value;
  }

  int integer(const std::string& key, int fallback) {
    const Json* value = get(key);
    if (!value) return fallback;
    if (!value->is_number_integer()) format_error(name(key), "expected an integer");
    const auto out = value->get<std::int64_t>();
    if (out < 0 || out > std::numeric_limits<int>::max()) format_error(name(key), "out of range");
    return static_cast<int>(out);
  }

  std::optional<std::string> text(const std::string& key) {
    const Json* value = get(key);
    if (!value) return std::nullopt;
    if (!value->is_string()) format_error(name(key), "expected a string");
    return value->get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const Json* value = get(key);
    if (!value) return fallback;
    if (!value->is_boolean()) format_error(name(key), "expected true or false");
    return value->get<bool>();
  }

  std::vector<double> coordinates(const std::string& key) {
    const Json* value = get(key);
    if (!value) return {};
    if (!value->is_array() || value->empty() || value->size() > 2) {
      format_error(name(key), "expected an array of 1 or 2 numbers");
    }
    std::vector<double> out;
    for (const auto& item : *value) {
      if (!item.is_number()) format_error(name(key), "expected an array of 1 or 2 numbers");
      out.push_back(item.get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!used_.contains(key)) format_error(name(key), "unknown key");
    }
  }

 private:
  const Json& object_;
  std::string path_;
  std::set<std::string> used_;
};

std::filesystem::path resolve(const std::string& path, const std::filesystem::path& base_dir) {
  std::filesystem::path out(path);
  if (out.is_relative() && !base_dir.empty()) out = base_dir / out;
  return out.lexically_normal();
}

void parse_model(const Json& json, Scene& scene, bool custom) {
  Fields fields(json, "model");
  const auto kind_name = fields.text("kind");
  if (!kind_name) format_error("model.kind", "missing required key");
  const auto kind = parse_model_kind(*kind_name);
  if (!kind) format_error("model.kind", "unknown model kind '" + *kind_name + "'");
  ModelSpec& model = scene.model;
  model.kind = *kind;

  if (custom && (fields.has("material") || fields.has("geometry"))) {
    throw Error(ErrorCode::kValidation,
                std::string("model.") + (fields.has("geometry") ? "geometry" : "material") +
                    ": not allowed together with custom_data (the modal data file fixes them)");
  }
  if (const Json* material = fields.get("material")) {
    Fields m(*material, "model.material");
    model.material.youngs_modulus = units::gpa_to_pa(m.required_number("youngs_modulus"));
    model.material.mass_density = m.required_number("density");
    model.material.poisson_ratio = m.number("poisson_ratio");
    m.finish();
  } else if (!custom) {
    format_error("model.material", "missing required key");
  }
  if (const Json* geometry = fields.get("geometry")) {
    Fields g(*geometry, "model.geometry");
    model.geometry.lx = g.required_number("lx");
    model.geometry.ly = g.number("ly");
    model.geometry.thickness = g.number("thickness");
    if (const auto area = g.number("cross_sectional_area")) {
      model.geometry.cross_sectional_area = units::mm2_to_m2(*area);
    }
    if (const auto inertia = g.number("moment_of_inertia")) {
      model.geometry.moment_of_inertia = units::mm4_to_m4(*inertia);
    }
    g.finish();
  } else if (!custom) {
    format_error("model.geometry", "missing required key");
  }
  if (const Json* damping = fields.get("damping")) {
    Fields d(*damping, "model.damping");
    model.damping.tension = d.number("tension", 0.0);
    model.damping.f_independent_loss = d.number("f_independent_loss", 0.0);
    model.damping.f_dependent_loss = d.number("f_dependent_loss", 0.0);
    d.finish();
  }
  fields.finish();
}

void parse_simulation(const Json& json, SimulationSettings& sim) {
  Fields fields(json, "simulation");
  sim.sample_rate = fields.number("sample_rate", sim.sample_rate);
  sim.duration = fields.number("duration", sim.duration);
  sim.modes_x = fields.integer("modes_x", sim.modes_x);
  sim.modes_y = fields.integer("modes_y", sim.modes_y);
  sim.max_modes = fields.integer("modes", sim.max_modes);
  sim.inplane_x = fields.integer("inplane_x", sim.inplane_x);
  sim.inplane_y = fields.integer("inplane_y", sim.inplane_y);
  sim.max_inplane = fields.integer("inplane_modes", sim.max_inplane);
  sim.nonlinear = fields.boolean("nonlinear", sim.nonlinear);
  sim.quadrature_order = fields.integer("quadrature_order", sim.quadrature_order);
  if (const auto output = fields.text("output")) {
    if (*output == "displacement") {
      sim.output = OutputQuantity::kDisplacement;
    } else if (*output == "velocity") {
      sim.output = OutputQuantity::kVelocity;
    } else {
      format_error("simulation.output", "expected \"displacement\" or \"velocity\"");
    }
  }
  sim.divergence_bound = fields.number("divergence_bound", sim.divergence_bound);
  fields.finish();
}

ExcitationEvent parse_excitation(const Json& json, const std::string& path,
                                 const std::filesystem::path& base_dir) {
  Fields fields(json, path);
  ExcitationEvent event;
  const auto kind_name = fields.text("kind");
  if (!kind_name) format_error(fields.name("kind"), "missing required key");
  const auto kind = parse_excitation_kind(*kind_name);
  if (!kind) format_error(fields.name("kind"), "unknown excitation kind '" + *kind_name + "'");
  event.kind = *kind;
  event.position = fields.coordinates("position");
  event.point = fields.text("point");
  event.amplitude = fields.required_number("amplitude");
  event.start = fields.number("start", 0.0);
  event.duration = fields.number("duration", 0.0);
  event.cutoff = fields.number("cutoff", event.cutoff);
  if (const Json* seed = fields.get("seed")) {
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<std::int64_t>() >= 0)) {
      format_error(fields.name("seed"), "expected a non-negative integer");
    }
    event.seed = seed->get<std::uint64_t>();
  }
  if (const auto file = fields.text("file")) event.file = resolve(*file, base_dir).string();
  fields.finish();
  return event;
}

Readout parse_readout(const Json& json, const std::string& path) {
  Fields fields(json, path);
  Readout readout;
  readout.position = fields.coordinates("position");
  readout.point = fields.text("point");
  fields.finish();
  return readout;
}

Json coordinates_json(const std::vector<double>& position) {
  Json out = Json::array();
  for (double v : position) out.push_back(v);
  return out;
}

}  // namespace

Scene parse_scene(const std::string& text, const std::filesystem::path& base_dir) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSceneFormat, std::string("scene is not valid JSON: ") + e.what());
  }
  Fields fields(json, "");
  Scene scene;
  if (const auto custom = fields.text("custom_data")) scene.custom_data = resolve(*custom, base_dir);

  const Json* model = fields.get("model");
  if (!model) format_error("model", "missing required key");
  parse_model(*model, scene, scene.custom_data.has_value());

  if (const Json* sim = fields.get("simulation")) parse_simulation(*sim, scene.simulation);

  if (const Json* list = fields.get("excitations")) {
    if (!list->is_array()) format_error("excitations", "expected an array");
    for (std::size_t i = 0; i < list->size(); ++i) {
      scene.excitations.push_back(
          parse_excitation((*list)[i], "excitations[" + std::to_string(i) + "]", base_dir));
    }
  }
  if (const Json* list = fields.get("readouts")) {
    if (!list->is_array()) format_error("readouts", "expected an array");
    for (std::size_t i = 0; i < list->size(); ++i) {
      scene.readouts.push_back(parse_readout((*list)[i], "readouts[" + std::to_string(i) + "]"));
    }
  }
  scene.gain = fields.number("gain", 1.0);
  fields.finish();
  return scene;
}

Scene read_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scene file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scene(buffer.str(), path.parent_path());
}

std::string serialize_scene(const Scene& scene) {
  Json json = Json::object();
  if (scene.custom_data) json["custom_data"] = scene.custom_data->string();

  const ModelSpec& model = scene.model;
  Json& m = json["model"];
  m["kind"] = std::string(to_string(model.kind));
  if (!scene.custom_data) {
    Json& material = m["material"];
    material["youngs_modulus"] = units::pa_to_gpa(model.material.youngs_modulus);
    material["density"] = model.material.mass_density;
    if (model.material.poisson_ratio) material["poisson_ratio"] = *model.material.poisson_ratio;
    Json& geometry = m["geometry"];
    geometry["lx"] = model.geometry.lx;
    if (model.geometry.ly) geometry["ly"] = *model.geometry.ly;
    if (model.geometry.thickness) geometry["thickness"] = *model.geometry.thickness;
    if (model.geometry.cross_sectional_area) {
      geometry["cross_sectional_area"] = units::m2_to_mm2(*model.geometry.cross_sectional_area);
    }
    if (model.geometry.moment_of_inertia) {
      geometry["moment_of_inertia"] = units::m4_to_mm4(*model.geometry.moment_of_inertia);
    }
  }
  m["damping"] = {{"tension", model.damping.tension},
                  {"f_independent_loss", model.damping.f_independent_loss},
                  {"f_dependent_loss", model.damping.f_dependent_loss}};

  const SimulationSettings& sim = scene.simulation;
  Json& s = json["simulation"];
  s["sample_rate"] = sim.sample_rate;
  s["duration"] = sim.duration;
  s["modes_x"] = sim.modes_x;
  s["modes_y"] = sim.modes_y;
  s["modes"] = sim.max_modes;
  s["inplane_x"] = sim.inplane_x;
  s["inplane_y"] = sim.inplane_y;
  s["inplane_modes"] = sim.max_inplane;
  s["nonlinear"] = sim.nonlinear;
  s["quadrature_order"] = sim.quadrature_order;
  s["output"] = sim.output == OutputQuantity::kVelocity ? "velocity" : "displacement";
  s["divergence_bound"] = sim.divergence_bound;

  json["excitations"] = Json::array();
  for (const auto& event : scene.excitations) {
    Json e;
    e["kind"] = std::string(to_string(event.kind));
    if (event.point) {
      e["point"] = *event.point;
    } else {
      e["position"] = coordinates_json(event.position);
    }
    e["amplitude"] = event.amplitude;
    e["start"] = event.start;
    e["duration"] = event.duration;
    if (event.kind == ExcitationKind::kFilteredNoise) e["cutoff"] = event.cutoff;
    if (event.kind == ExcitationKind::kNoiseBurst || event.kind == ExcitationKind::kFilteredNoise) {
      e["seed"] = event.seed;
    }
    if (event.kind == ExcitationKind::kSampleFile) e["file"] = event.file;
    json["excitations"].push_back(std::move(e));
  }
  json["readouts"] = Json::array();
  for (const auto& readout : scene.readouts) {
    Json r;
    if (readout.point) {
      r["point"] = *readout.point;
    } else {
      r["position"] = coordinates_json(readout.position);
    }
    json["readouts"].push_back(std::move(r));
  }
  json["gain"] = scene.gain;
  return json.dump(2) + "\n";
}

void write_scene(const std::filesystem::path& path, const Scene& scene) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write scene file: " + path.string());
  out << serialize_scene(scene);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void apply_override(Scene& scene, std::string_view name, double value) {
  if (name == "sample_rate") {
    scene.simulation.sample_rate = value;
  } else if (name == "duration") {
    scene.simulation.duration = value;
  } else if (name == "gain") {
    scene.gain = value;
  } else {
    apply_attribute(scene, name, value);
  }
}

}  // namespace nlm
