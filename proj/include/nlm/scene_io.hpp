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

#include <filesystem>
#include <string>
#include <string_view>

#include "nlm/engine.hpp"

namespace nlm {

/// Strict JSON scene parsing: unknown keys and wrong types are
/// Error(kSceneFormat) naming the offending key. Display units (GPa, mm^2,
/// mm^4) are converted to SI here. Relative `custom_data` and sample-file
/// paths resolve against `base_dir`.
Scene parse_scene(const std::string& text, const std::filesystem::path& base_dir = {});
Scene read_scene(const std::filesystem::path& path);

/// Normalized JSON in display units. Material and geometry are omitted for
/// custom-data scenes.
std::string serialize_scene(const Scene& scene);
void write_scene(const std::filesystem::path& path, const Scene& scene);

/// Sets one attribute on a scene description (same names and units as
/// Voice::set_attribute, plus the timing keys and gain).
void apply_override(Scene& scene, std::string_view name, double value);

}  // namespace nlm
