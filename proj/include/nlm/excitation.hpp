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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nlm/modal_basis.hpp"

namespace nlm {

enum class ExcitationKind { kImpulse, kRaisedCosine, kNoiseBurst, kFilteredNoise, kSampleFile };

/// Scene-file spelling: "impulse", "raised_cosine", "noise_burst",
/// "filtered_noise", "sample_file".
std::string_view to_string(ExcitationKind kind);
std::optional<ExcitationKind> parse_excitation_kind(std::string_view name);

/// A state-independent point force. Either `position` (metres) or `point`
/// (a named point of a custom basis) locates it.
struct ExcitationEvent {
  ExcitationKind kind = ExcitationKind::kRaisedCosine;
  std::vector<double> position;
  std::optional<std::string> point;
  double amplitude = 0.0;  // N
  double start = 0.0;      // s
  double duration = 0.0;   // s; for sample files 0 means "whole file"
  double cutoff = 1000.0;  // Hz, filtered noise only
  std::uint64_t seed = 0;
  std::string file;  // sample files only
};

/// Checks the event invariants that do not depend on a basis.
void validate_event(const ExcitationEvent& event);

/// Portable white noise: std::mt19937_64 seeded with `seed`, each draw x maps
/// to 2 * ((x >> 11) * 2^-53) - 1, a uniform value in [-1, 1).
class WhiteNoise {
 public:
  explicit WhiteNoise(std::uint64_t seed) : engine_(seed) {}

  double next() {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
  }

 private:
  std::mt19937_64 engine_;
};

/// A force signal sampled at the render rate, non-zero only on
/// [start_sample, start_sample + samples.size()).
struct ExcitationSignal {
  std::int64_t start_sample = 0;
  std::vector<double> samples;

  std::int64_t end_sample() const { return start_sample + static_cast<std::int64_t>(samples.size()); }
  double at(std::int64_t n) const {
    return n >= start_sample && n < end_sample() ? samples[static_cast<std::size_t>(n - start_sample)]
                                                 : 0.0;
  }
};

/// Raised-cosine window amplitude * (1 - cos(2 pi (t - start)/duration)) / 2 on
/// [start, start + duration], zero elsewhere.
double raised_cosine(const ExcitationEvent& event, double t);

/// Samples the event at t = n / sample_rate. Noise kinds draw one value per
/// sample from the window's first sample on; filtered noise runs it through
/// y[k] = y[k-1] + alpha (u[k] - y[k-1]), alpha = 1 - exp(-2 pi fc / fs).
/// Sample files are read once and linearly interpolated onto the render rate.
ExcitationSignal render_signal(const ExcitationEvent& event, double sample_rate);

/// f_exc(t). Impulse and raised cosine are evaluated in continuous time; the
/// sampled kinds return the render_signal value of the sample nearest t.
double force_sample(const ExcitationEvent& event, double t, double sample_rate);

struct ProjectedExcitation {
  Eigen::ArrayXd weights;  // Phi_mu(x0)
  ExcitationSignal signal;
};

/// Modal weights at the strike point, computed once for the event lifetime.
Eigen::ArrayXd projection_weights(const ExcitationEvent& event, const ModalBasis& basis);

ProjectedExcitation project(const ExcitationEvent& event, const ModalBasis& basis,
                            double sample_rate);

}  // namespace nlm
