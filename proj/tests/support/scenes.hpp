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

// Small scenes shared across the test binaries.

#include <filesystem>
#include <string>

#include "nlm/engine.hpp"

namespace nlm::testing {

/// 1 m steel string, 0.5 mm^2, 100 N, light damping, 20 modes, 0.25 s.
Scene string_scene();
/// 0.4 x 0.3 m membrane, 0.2 mm thick, 8x8 grid capped at 30 modes.
Scene berger_scene();
/// 0.6 x 0.5 x 1 mm steel plate, 6x6 transverse and 4x4 in-plane grids.
Scene vk_scene();

/// Raised-cosine strike of `duration` seconds starting at t = 0.
ExcitationEvent strike(std::vector<double> position, double amplitude, double duration = 1e-3);

/// Fresh, empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace nlm::testing
