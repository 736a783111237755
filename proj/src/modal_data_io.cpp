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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlm/error.hpp"
#include "nlm/modal_data.hpp"

namespace nlm {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void data_error(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kCustomData, "modal data: " + key + ": " + what);
}

void check_keys(const Json& object, const std::string& path, std::initializer_list<const char*> known) {
  if (!object.is_object()) data_error(path, "expected an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) data_error(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double number_at(const Json& object, const std::string& key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) data_error(path + key, "missing required key");
  if (!it->is_number()) data_error(path + key, "expected a number");
  const double value = it->get<double>();
  if (!std::isfinite(value)) data_error(path + key, "expected a finite number");
  return value;
}

const Json& array_at(const Json& object, const std::string& key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) data_error(path + key, "missing required key");
  if (!it->is_array()) data_error(path + key, "expected an array");
  return *it;
}

std::vector<double> numbers(const Json& array, const std::string& path) {
  std::vector<double> out;
  out.reserve(array.size());
  for (const auto& item : array) {
    if (!item.is_number()) data_error(path, "expected numbers only");
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace

ModalData parse_modal_data(const std::string& text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kCustomData, std::string("modal data is not valid JSON: ") + e.what());
  }
  check_keys(json, "", {"format_version", "kind", "rho", "bending_stiffness", "nonlinear_gain",
                        "points", "modes", "inplane", "H"});
  ModalData data;

  const auto version = json.find("format_version");
  if (version == json.end()) data_error("format_version", "missing required key");
  if (!version->is_number_integer() || version->get<std::int64_t>() != ModalData::kFormatVersion) {
    data_error("format_version", "unsupported version " + version->dump() + " (expected " +
                                     std::to_string(ModalData::kFormatVersion) + ")");
  }

  const auto kind = json.find("kind");
  if (kind == json.end() || !kind->is_string()) data_error("kind", "expected \"string\", \"berger\" or \"vk\"");
  const auto parsed_kind = parse_model_kind(kind->get<std::string>());
  if (!parsed_kind) data_error("kind", "unknown model kind " + kind->dump());
  data.kind = *parsed_kind;
  data.rho = number_at(json, "rho", "");
  data.bending_stiffness = number_at(json, "bending_stiffness", "");
  data.nonlinear_gain = number_at(json, "nonlinear_gain", "");

  if (const auto points = json.find("points"); points != json.end()) {
    if (!points->is_object()) data_error("points", "expected an object");
    for (const auto& [name, coords] : points->items()) {
      if (!coords.is_array()) data_error("points." + name, "expected an array of numbers");
      data.points[name] = numbers(coords, "points." + name);
    }
  }

  const Json& modes = array_at(json, "modes", "");
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const std::string path = "modes[" + std::to_string(k) + "].";
    const Json& item = modes[k];
    check_keys(item, path.substr(0, path.size() - 1), {"lambda", "norm_sq", "index", "shape_at"});
    ModalData::Mode mode;
    mode.lambda = number_at(item, "lambda", path);
    mode.norm_sq = number_at(item, "norm_sq", path);
    if (const auto index = item.find("index"); index != item.end()) {
      if (!index->is_array() || index->size() != 2 || !(*index)[0].is_number_integer() ||
          !(*index)[1].is_number_integer()) {
        data_error(path + "index", "expected [m, n]");
      }
      mode.index = ModeIndex{(*index)[0].get<int>(), (*index)[1].get<int>()};
    }
    if (const auto shapes = item.find("shape_at"); shapes != item.end()) {
      if (!shapes->is_object()) data_error(path + "shape_at", "expected an object");
      for (const auto& [name, value] : shapes->items()) {
        if (!value.is_number()) data_error(path + "shape_at." + name, "expected a number");
        if (!data.points.contains(name)) data_error(path + "shape_at." + name, "undeclared point");
        mode.shape_at[name] = value.get<double>();
      }
    }
    data.modes.push_back(std::move(mode));
  }

  if (json.contains("inplane")) {
    const Json& inplane = array_at(json, "inplane", "");
    for (std::size_t n = 0; n < inplane.size(); ++n) {
      const std::string path = "inplane[" + std::to_string(n) + "].";
      check_keys(inplane[n], path.substr(0, path.size() - 1), {"zeta4", "norm_sq"});
      ModalData::InPlane mode;
      mode.zeta4 = number_at(inplane[n], "zeta4", path);
      if (inplane[n].contains("norm_sq")) mode.norm_sq = number_at(inplane[n], "norm_sq", path);
      data.inplane.push_back(mode);
    }
  }

  if (const auto tensor = json.find("H"); tensor != json.end()) {
    check_keys(*tensor, "H", {"dims", "data"});
    const Json& dims = array_at(*tensor, "dims", "H.");
    for (const auto& d : dims) {
      if (!d.is_number_unsigned()) data_error("H.dims", "expected non-negative integers");
      data.h_dims.push_back(d.get<std::size_t>());
    }
    data.h_data = numbers(array_at(*tensor, "data", "H."), "H.data");
  }
  return data;
}

ModalData read_modal_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open modal data file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_modal_data(buffer.str());
}

std::string serialize_modal_data(const ModalData& data) {
  Json json = Json::object();
  json["format_version"] = data.format_version;
  json["kind"] = std::string(to_string(data.kind));
  json["rho"] = data.rho;
  json["bending_stiffness"] = data.bending_stiffness;
  json["nonlinear_gain"] = data.nonlinear_gain;
  json["points"] = Json::object();
  for (const auto& [name, coords] : data.points) json["points"][name] = coords;
  json["modes"] = Json::array();
  for (const auto& mode : data.modes) {
    Json item;
    item["lambda"] = mode.lambda;
    item["norm_sq"] = mode.norm_sq;
    if (mode.index) item["index"] = {mode.index->m, mode.index->n};
    item["shape_at"] = Json::object();
    for (const auto& [name, value] : mode.shape_at) item["shape_at"][name] = value;
    json["modes"].push_back(std::move(item));
  }
  if (!data.inplane.empty()) {
    json["inplane"] = Json::array();
    for (const auto& mode : data.inplane) json["inplane"].push_back({{"zeta4", mode.zeta4}, {"norm_sq", mode.norm_sq}});
  }
  if (!data.h_dims.empty()) {
    json["H"]["dims"] = data.h_dims;
    json["H"]["data"] = data.h_data;
  }
  return json.dump() + "\n";
}

void write_modal_data(const std::filesystem::path& path, const ModalData& data) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write modal data file: " + path.string());
  out << serialize_modal_data(data);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace nlm
