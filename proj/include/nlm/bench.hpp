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

#include <vector>

#include "nlm/engine.hpp"

namespace nlm {

struct BenchConfig {
  ModelKind model = ModelKind::kVonKarman;
  int modes = 100;
  int inplane = 50;  // vk only
  double seconds = 1.0;
  double sample_rate = 44100.0;
  int repetitions = 5;
};

struct BenchResult {
  std::size_t transverse = 0;
  std::size_t inplane = 0;
  std::int64_t samples = 0;
  std::vector<double> run_seconds;  // one entry per repetition
  double median_seconds = 0.0;
  double samples_per_second = 0.0;
  double realtime_factor = 0.0;
  double ns_per_sample = 0.0;
};

/// A fixed scene for timing: every requested mode sits below Nyquist, the
/// non-linearity is on and a single raised-cosine strike excites the
/// structure off its symmetry lines.
Scene bench_scene(const BenchConfig& config);

/// Prepares once, then renders `repetitions` times from rest and reports the
/// median wall-clock time. Preparation is not timed.
BenchResult run_bench(const BenchConfig& config);

}  // namespace nlm
