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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlm/model_params.hpp"
#include "nlm/modal_basis.hpp"

namespace nlm {

/// Externally computed modal data: eigenpairs, shape values at named points
/// and, for vk, in-plane eigenvalues and the coupling tensor. Everything that
/// depends on material or geometry travels with the file, so a scene using it
/// supplies only tension and damping besides its simulation settings.
struct ModalData {
  static constexpr int kFormatVersion = 1;

  struct Mode {
    double lambda = 0.0;
    double norm_sq = 0.0;
    std::optional<ModeIndex> index;  // informational
    std::map<std::string, double> shape_at;
  };

  struct InPlane {
    double zeta4 = 0.0;
    double norm_sq = 1.0;
  };

  int format_version = kFormatVersion;
  ModelKind kind = ModelKind::kString;
  double rho = 0.0;                // line/areal density
  double bending_stiffness = 0.0;  // D
  double nonlinear_gain = 0.0;     // gain of the kind's modal force law
  std::map<std::string, std::vector<double>> points;
  std::vector<Mode> modes;
  std::vector<InPlane> inplane;
  std::vector<std::size_t> h_dims;  // empty when no tensor is given
  std::vector<double> h_data;       // row-major (n, q, r)
};

/// JSON (de)serialization. Parsing is strict: unknown keys and a missing or
/// different format_version are errors (Error(kCustomData)).
ModalData parse_modal_data(const std::string& text);
ModalData read_modal_data(const std::filesystem::path& path);
std::string serialize_modal_data(const ModalData& data);
void write_modal_data(const std::filesystem::path& path, const ModalData& data);

}  // namespace nlm
