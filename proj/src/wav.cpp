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

#include "nlm/wav.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "nlm/error.hpp"

namespace nlm {

namespace {

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(const std::vector<char>& bytes, std::size_t offset) {
  if (offset + sizeof(T) > bytes.size()) throw Error(ErrorCode::kIo, "file unreadable: truncated WAV");
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

}  // namespace

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio) {
  const auto channels = static_cast<std::uint16_t>(audio.channels.size());
  const auto frames = static_cast<std::uint32_t>(audio.frames());
  if (channels == 0) throw Error(ErrorCode::kIo, "cannot write a WAV file without channels");
  for (const auto& channel : audio.channels) {
    if (channel.size() != frames) throw Error(ErrorCode::kIo, "channels differ in length");
  }
  const std::uint32_t data_bytes = frames * channels * 4u;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write("RIFF", 4);
  put<std::uint32_t>(out, 36u + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put<std::uint32_t>(out, 16);
  put<std::uint16_t>(out, kFormatFloat);
  put<std::uint16_t>(out, channels);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(audio.sample_rate));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(audio.sample_rate) * channels * 4u);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(channels * 4));
  put<std::uint16_t>(out, 32);
  out.write("data", 4);
  put<std::uint32_t>(out, data_bytes);
  for (std::uint32_t f = 0; f < frames; ++f) {
    for (const auto& channel : audio.channels) put<float>(out, static_cast<float>(channel[f]));
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "file unreadable: " + path.string());
  const std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kIo, "file unreadable: not a RIFF/WAVE file: " + path.string());
  }

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  std::size_t data_offset = 0;
  std::size_t data_size = 0;
  std::size_t offset = 12;
  while (offset + 8 <= bytes.size()) {
    const std::uint32_t size = get<std::uint32_t>(bytes, offset + 4);
    const std::size_t body = offset + 8;
    if (std::memcmp(bytes.data() + offset, "fmt ", 4) == 0) {
      format = get<std::uint16_t>(bytes, body);
      channels = get<std::uint16_t>(bytes, body + 2);
      rate = get<std::uint32_t>(bytes, body + 4);
      bits = get<std::uint16_t>(bytes, body + 14);
      if (format == kFormatExtensible && size >= 40) format = get<std::uint16_t>(bytes, body + 24);
    } else if (std::memcmp(bytes.data() + offset, "data", 4) == 0) {
      data_offset = body;
      data_size = std::min<std::size_t>(size, bytes.size() - body);
    }
    offset = body + size + (size & 1u);
  }
  if (channels == 0 || data_offset == 0) {
    throw Error(ErrorCode::kIo, "file unreadable: missing fmt or data chunk: " + path.string());
  }
  const bool supported = (format == kFormatPcm && (bits == 16 || bits == 24 || bits == 32)) ||
                         (format == kFormatFloat && (bits == 32 || bits == 64));
  if (!supported) {
    throw Error(ErrorCode::kIo, "file unreadable: unsupported WAV encoding (format " +
                                    std::to_string(format) + ", " + std::to_string(bits) + " bits)");
  }

  const std::size_t sample_bytes = bits / 8;
  const std::size_t frames = data_size / (sample_bytes * channels);
  AudioBuffer audio;
  audio.sample_rate = rate;
  audio.channels.assign(channels, std::vector<double>(frames));
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t at = data_offset + (f * channels + c) * sample_bytes;
      double value = 0.0;
      if (format == kFormatFloat) {
        value = bits == 32 ? get<float>(bytes, at) : get<double>(bytes, at);
      } else if (bits == 16) {
        value = get<std::int16_t>(bytes, at) / 32768.0;
      } else if (bits == 24) {
        const auto b0 = static_cast<std::uint8_t>(bytes[at]);
        const auto b1 = static_cast<std::uint8_t>(bytes[at + 1]);
        const auto b2 = static_cast<std::uint8_t>(bytes[at + 2]);
        std::int32_t raw = b0 | (b1 << 8) | (b2 << 16);
        if (raw & 0x800000) raw -= 0x1000000;
        value = raw / 8388608.0;
      } else {
        value = get<std::int32_t>(bytes, at) / 2147483648.0;
      }
      audio.channels[c][f] = value;
    }
  }
  return audio;
}

}  // namespace nlm
