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

#include "nlm/excitation.hpp"

#include <cmath>
#include <numbers>

#include "nlm/error.hpp"
#include "nlm/wav.hpp"

namespace nlm {

std::string_view to_string(ExcitationKind kind) {
  switch (kind) {
    case ExcitationKind::kImpulse:
      return "impulse";
    case ExcitationKind::kRaisedCosine:
      return "raised_cosine";
    case ExcitationKind::kNoiseBurst:
      return "noise_burst";
    case ExcitationKind::kFilteredNoise:
      return "filtered_noise";
    case ExcitationKind::kSampleFile:
      return "sample_file";
  }
  return "?";
}

std::optional<ExcitationKind> parse_excitation_kind(std::string_view name) {
  for (auto kind : {ExcitationKind::kImpulse, ExcitationKind::kRaisedCosine,
                    ExcitationKind::kNoiseBurst, ExcitationKind::kFilteredNoise,
                    ExcitationKind::kSampleFile}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

void validate_event(const ExcitationEvent& event) {
  std::vector<std::string> problems;
  if (!std::isfinite(event.amplitude)) problems.push_back("excitation: amplitude must be finite");
  if (!(event.start >= 0.0) || !std::isfinite(event.start)) problems.push_back("excitation: start must be >= 0");
  const bool needs_duration = event.kind == ExcitationKind::kRaisedCosine ||
                              event.kind == ExcitationKind::kNoiseBurst ||
                              event.kind == ExcitationKind::kFilteredNoise;
  if (needs_duration && !(event.duration > 0.0)) problems.push_back("excitation: duration must be > 0");
  if (event.kind == ExcitationKind::kSampleFile && event.duration < 0.0) {
    problems.push_back("excitation: duration must be >= 0");
  }
  if (event.kind == ExcitationKind::kFilteredNoise && !(event.cutoff > 0.0)) {
    problems.push_back("excitation: cutoff must be > 0");
  }
  if (event.kind == ExcitationKind::kSampleFile && event.file.empty()) {
    problems.push_back("excitation: sample_file requires a file");
  }
  if (event.position.empty() == !event.point.has_value()) {
    problems.push_back("excitation: exactly one of position or point is required");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

double raised_cosine(const ExcitationEvent& event, double t) {
  if (t < event.start || t > event.start + event.duration) return 0.0;
  return event.amplitude * 0.5 *
         (1.0 - std::cos(2.0 * std::numbers::pi * (t - event.start) / event.duration));
}

namespace {

// Samples n with start <= n / fs <= start + duration.
std::pair<std::int64_t, std::int64_t> window_samples(const ExcitationEvent& event, double fs) {
  const auto first = static_cast<std::int64_t>(std::ceil(event.start * fs));
  const auto last = static_cast<std::int64_t>(std::floor((event.start + event.duration) * fs));
  return {first, std::max(first, last + 1)};
}

double window_at(const ExcitationEvent& event, double t) {
  ExcitationEvent unit = event;
  unit.amplitude = 1.0;
  return raised_cosine(unit, t);
}

}  // namespace

ExcitationSignal render_signal(const ExcitationEvent& event, double sample_rate) {
  ExcitationSignal signal;
  switch (event.kind) {
    case ExcitationKind::kImpulse: {
      signal.start_sample = std::llround(event.start * sample_rate);
      signal.samples = {event.amplitude};
      break;
    }
    case ExcitationKind::kRaisedCosine: {
      const auto [first, end] = window_samples(event, sample_rate);
      signal.start_sample = first;
      for (std::int64_t n = first; n < end; ++n) {
        signal.samples.push_back(raised_cosine(event, n / sample_rate));
      }
      break;
    }
    case ExcitationKind::kNoiseBurst:
    case ExcitationKind::kFilteredNoise: {
      const auto [first, end] = window_samples(event, sample_rate);
      signal.start_sample = first;
      WhiteNoise noise(event.seed);
      const double alpha = 1.0 - std::exp(-2.0 * std::numbers::pi * event.cutoff / sample_rate);
      double filtered = 0.0;
      for (std::int64_t n = first; n < end; ++n) {
        double value = noise.next();
        if (event.kind == ExcitationKind::kFilteredNoise) {
          filtered += alpha * (value - filtered);
          value = filtered;
        }
        signal.samples.push_back(event.amplitude * value * window_at(event, n / sample_rate));
      }
      break;
    }
    case ExcitationKind::kSampleFile: {
      const AudioBuffer audio = read_wav(event.file);
      const std::vector<double>& source = audio.channels.front();
      const double file_length = static_cast<double>(source.size()) / audio.sample_rate;
      const double length = event.duration > 0.0 ? std::min(event.duration, file_length) : file_length;
      signal.start_sample = static_cast<std::int64_t>(std::ceil(event.start * sample_rate));
      const auto count = static_cast<std::int64_t>(std::floor(length * sample_rate));
      for (std::int64_t k = 0; k < count; ++k) {
        const double t = (signal.start_sample + k) / sample_rate - event.start;
        const double pos = t * audio.sample_rate;
        const auto i = static_cast<std::size_t>(std::floor(pos));
        double value = 0.0;
        if (i + 1 < source.size()) {
          const double frac = pos - static_cast<double>(i);
          value = source[i] + frac * (source[i + 1] - source[i]);
        } else if (i < source.size()) {
          value = source[i];
        }
        signal.samples.push_back(event.amplitude * value);
      }
      break;
    }
  }
  return signal;
}

double force_sample(const ExcitationEvent& event, double t, double sample_rate) {
  switch (event.kind) {
    case ExcitationKind::kImpulse:
      return std::llround(t * sample_rate) == std::llround(event.start * sample_rate) ? event.amplitude
                                                                                      : 0.0;
    case ExcitationKind::kRaisedCosine:
      return raised_cosine(event, t);
    default:
      return render_signal(event, sample_rate).at(std::llround(t * sample_rate));
  }
}

Eigen::ArrayXd projection_weights(const ExcitationEvent& event, const ModalBasis& basis) {
  const auto modes = static_cast<Eigen::Index>(basis.size());
  if (basis.custom) {
    if (!event.point) throw Error(ErrorCode::kCustomData, "position not a stored point");
    const auto it = basis.point_shapes.find(*event.point);
    if (it == basis.point_shapes.end()) {
      throw Error(ErrorCode::kCustomData, "position not a stored point: " + *event.point);
    }
    return Eigen::Map<const Eigen::ArrayXd>(it->second.data(), modes);
  }
  if (event.point) {
    throw Error(ErrorCode::kBasis, "named point '" + *event.point + "' requires custom modal data");
  }
  check_in_domain(basis.kind, basis.lx, basis.ly, event.position);
  Eigen::ArrayXd weights(modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    weights[k] = sine_shape(basis.transverse[k].index, basis.lx, basis.ly, event.position);
  }
  return weights;
}

ProjectedExcitation project(const ExcitationEvent& event, const ModalBasis& basis,
                            double sample_rate) {
  return {projection_weights(event, basis), render_signal(event, sample_rate)};
}

}  // namespace nlm
