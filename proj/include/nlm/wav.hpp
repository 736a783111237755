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
#include <vector>

namespace nlm {

/// Planar audio: channels[c][frame].
struct AudioBuffer {
  double sample_rate = 0.0;
  std::vector<std::vector<double>> channels;

  std::size_t frames() const { return channels.empty() ? 0 : channels.front().size(); }
};

/// Writes RIFF/WAVE, IEEE float 32-bit, little-endian, interleaved.
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio);

/// Reads PCM 16/24/32-bit integer or IEEE float 32/64-bit WAV files.
/// Integer formats are scaled to [-1, 1). Throws Error(kIo) on anything else.
AudioBuffer read_wav(const std::filesystem::path& path);

}  // namespace nlm
