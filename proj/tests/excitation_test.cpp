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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nlm/error.hpp"
#include "nlm/excitation.hpp"
#include "nlm/wav.hpp"
#include "scenes.hpp"

namespace nlm {
namespace {

constexpr double kRate = 44100.0;

ExcitationEvent event_of(ExcitationKind kind) {
  ExcitationEvent event;
  event.kind = kind;
  event.position = {0.3};
  event.amplitude = 2.0;
  event.start = 0.01;
  event.duration = 0.005;
  event.seed = 42;
  return event;
}

ModalBasis string_basis(int modes) {
  ModelSpec spec;
  spec.kind = ModelKind::kString;
  spec.material = {200e9, 7850.0, std::nullopt};
  spec.geometry.lx = 1.0;
  spec.geometry.cross_sectional_area = 1e-6;
  spec.damping.tension = 100.0;
  return build_basis(spec, {modes, 1, 0, 0, 0, 0}, kRate);
}

TEST(RaisedCosine, PeakAndSupport) {
  const auto event = event_of(ExcitationKind::kRaisedCosine);
  EXPECT_EQ(raised_cosine(event, event.start + event.duration / 2.0), event.amplitude);
  EXPECT_EQ(raised_cosine(event, event.start - 1e-4), 0.0);
  EXPECT_EQ(raised_cosine(event, event.start + event.duration + 1e-4), 0.0);
  EXPECT_EQ(raised_cosine(event, event.start), 0.0);
}

TEST(RenderSignal, RaisedCosineSamples) {
  const auto event = event_of(ExcitationKind::kRaisedCosine);
  const auto signal = render_signal(event, kRate);
  EXPECT_EQ(signal.start_sample, static_cast<std::int64_t>(std::ceil(0.01 * kRate)));
  for (std::int64_t n = signal.start_sample - 2; n < signal.end_sample() + 2; ++n) {
    EXPECT_EQ(signal.at(n), raised_cosine(event, n / kRate));
  }
}

TEST(RenderSignal, ImpulseIsOneSampleTall) {
  auto event = event_of(ExcitationKind::kImpulse);
  const auto signal = render_signal(event, kRate);
  ASSERT_EQ(signal.samples.size(), 1u);
  EXPECT_EQ(signal.samples[0], 2.0);
  EXPECT_EQ(signal.start_sample, std::llround(0.01 * kRate));
  EXPECT_EQ(force_sample(event, 0.01, kRate), 2.0);
  EXPECT_EQ(force_sample(event, 0.01 + 1.0 / kRate, kRate), 0.0);
}

TEST(WhiteNoise, DocumentedAlgorithm) {
  WhiteNoise noise(123);
  std::mt19937_64 reference(123);
  for (int k = 0; k < 1000; ++k) {
    const double v = noise.next();
    const double expected = 2.0 * (static_cast<double>(reference() >> 11) / 9007199254740992.0) - 1.0;
    EXPECT_EQ(v, expected);
    EXPECT_GE(v, -1.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(RenderSignal, NoiseIsSeeded) {
  const auto event = event_of(ExcitationKind::kNoiseBurst);
  EXPECT_EQ(render_signal(event, kRate).samples, render_signal(event, kRate).samples);
  auto other = event;
  other.seed = 43;
  EXPECT_NE(render_signal(event, kRate).samples, render_signal(other, kRate).samples);
}

TEST(RenderSignal, FilteredNoiseIsOnePoleOfWhiteNoise) {
  auto event = event_of(ExcitationKind::kFilteredNoise);
  event.cutoff = 800.0;
  const auto signal = render_signal(event, kRate);
  WhiteNoise noise(event.seed);
  const double alpha = 1.0 - std::exp(-2.0 * std::numbers::pi * 800.0 / kRate);
  double y = 0.0;
  for (std::size_t k = 0; k < signal.samples.size(); ++k) {
    y = y + alpha * (noise.next() - y);
    const double t = (signal.start_sample + static_cast<std::int64_t>(k)) / kRate;
    auto unit = event;
    unit.amplitude = 1.0;
    EXPECT_NEAR(signal.samples[k], event.amplitude * y * raised_cosine(unit, t), 1e-15);
  }
}

TEST(RenderSignal, SampleFileResampled) {
  const auto dir = testing::scratch_dir("excitation");
  AudioBuffer audio;
  audio.sample_rate = 22050.0;
  audio.channels.push_back({0.0, 0.5, 1.0, 0.5, 0.0, -0.5});
  write_wav(dir / "hit.wav", audio);
  auto event = event_of(ExcitationKind::kSampleFile);
  event.start = 0.0;
  event.duration = 0.0;
  event.file = (dir / "hit.wav").string();
  const auto signal = render_signal(event, kRate);
  ASSERT_EQ(signal.samples.size(), 12u);
  EXPECT_DOUBLE_EQ(signal.samples[1], 2.0 * 0.25);
  EXPECT_DOUBLE_EQ(signal.samples[4], 2.0 * 1.0);

  event.file = (dir / "missing.wav").string();
  EXPECT_THROW(render_signal(event, kRate), Error);
}

TEST(Projection, MidpointSilencesEvenModes) {
  const ModalBasis basis = string_basis(8);
  auto event = event_of(ExcitationKind::kRaisedCosine);
  event.position = {0.5};
  const auto w = projection_weights(event, basis);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis.transverse[k].index.m % 2 == 0) EXPECT_EQ(w[static_cast<Eigen::Index>(k)], 0.0);
  }
  EXPECT_EQ(w[0], 1.0);
}

TEST(Projection, WeightsIndependentOfAmplitudeAndModeCount) {
  auto event = event_of(ExcitationKind::kRaisedCosine);
  const auto a = projection_weights(event, string_basis(10));
  event.amplitude = 50.0;
  const auto b = projection_weights(event, string_basis(20));
  EXPECT_TRUE((a == b.head(10)).all());
}

TEST(Projection, PlateCentre) {
  ModelSpec spec;
  spec.kind = ModelKind::kBerger;
  spec.material = {4e9, 1000.0, 0.3};
  spec.geometry.lx = 0.6;
  spec.geometry.ly = 0.5;
  spec.geometry.thickness = 1e-3;
  spec.damping.tension = 100.0;
  const ModalBasis basis = build_basis(spec, {2, 2, 0, 0, 0, 0}, kRate);
  ExcitationEvent event = event_of(ExcitationKind::kRaisedCosine);
  event.position = {0.3, 0.25};
  const auto w = projection_weights(event, basis);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& index = basis.transverse[k].index;
    if (index == ModeIndex{1, 1}) EXPECT_EQ(w[static_cast<Eigen::Index>(k)], 1.0);
    if (index == ModeIndex{2, 1}) EXPECT_EQ(w[static_cast<Eigen::Index>(k)], 0.0);
  }
}

TEST(Projection, NamedPointNeedsCustomBasis) {
  auto event = event_of(ExcitationKind::kRaisedCosine);
  event.position.clear();
  event.point = "strike";
  EXPECT_THROW(projection_weights(event, string_basis(4)), Error);
}

TEST(ValidateEvent, Invariants) {
  auto event = event_of(ExcitationKind::kRaisedCosine);
  event.duration = 0.0;
  event.start = -1.0;
  try {
    validate_event(event);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.problems().size(), 2u);
  }
  auto impulse = event_of(ExcitationKind::kImpulse);
  impulse.duration = 0.0;
  EXPECT_NO_THROW(validate_event(impulse));
}

TEST(ExcitationKind, Spellings) {
  EXPECT_EQ(parse_excitation_kind("filtered_noise"), ExcitationKind::kFilteredNoise);
  EXPECT_FALSE(parse_excitation_kind("pluck").has_value());
}

}  // namespace
}  // namespace nlm
