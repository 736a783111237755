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

#include "nlm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "nlm/error.hpp"

namespace nlm {

namespace {

// Grid side large enough to contain the `count` lowest modes of a rectangle
// with aspect ratio near one.
int grid_side(int count) { return static_cast<int>(std::ceil(2.0 * std::sqrt(count))) + 2; }

}  // namespace

Scene bench_scene(const BenchConfig& config) {
  if (config.modes < 1) throw Error(ErrorCode::kUsage, "bench: modes must be >= 1");
  if (!(config.seconds > 0.0) || !(config.sample_rate > 0.0)) {
    throw Error(ErrorCode::kUsage, "bench: seconds and sample rate must be > 0");
  }
  Scene scene;
  ModelSpec& model = scene.model;
  model.kind = config.model;
  model.material.youngs_modulus = 200e9;
  model.material.mass_density = 7850.0;
  SimulationSettings& sim = scene.simulation;
  sim.sample_rate = config.sample_rate;
  sim.duration = config.seconds;
  sim.max_modes = config.modes;

  ExcitationEvent strike;
  strike.kind = ExcitationKind::kRaisedCosine;
  strike.start = 0.0;
  strike.duration = 1e-3;

  if (config.model == ModelKind::kString) {
    // Flexible 1 m string tuned to 40 Hz: 400 harmonics stay below 22.05 kHz.
    model.geometry.lx = 1.0;
    model.geometry.cross_sectional_area = 1e-6;
    const double rho = 7850.0 * 1e-6;
    model.damping.tension = rho * 80.0 * 80.0;
    model.damping.f_independent_loss = 2.0 * rho;
    sim.modes_x = config.modes;
    strike.amplitude = 1.0;
    strike.position = {0.37};
    scene.readouts.push_back({{0.71}, std::nullopt});
  } else {
    model.geometry.lx = 0.6;
    model.geometry.ly = 0.5;
    model.geometry.thickness = 1e-3;
    model.material.poisson_ratio = 0.3;
    const double rho = 7850.0 * 1e-3;
    model.damping.f_independent_loss = 2.0 * rho;
    model.damping.f_dependent_loss = 1e-4 * rho;
    sim.modes_x = sim.modes_y = grid_side(config.modes);
    if (config.model == ModelKind::kVonKarman) {
      if (config.inplane < 1) throw Error(ErrorCode::kUsage, "bench: vk needs inplane >= 1");
      sim.inplane_x = sim.inplane_y = grid_side(config.inplane);
      sim.max_inplane = config.inplane;
    }
    strike.amplitude = 5.0;
    strike.position = {0.37 * 0.6, 0.41 * 0.5};
    scene.readouts.push_back({{0.77 * 0.6, 0.23 * 0.5}, std::nullopt});
  }
  scene.excitations.push_back(strike);
  return scene;
}

BenchResult run_bench(const BenchConfig& config) {
  if (config.repetitions < 1) throw Error(ErrorCode::kUsage, "bench: repetitions must be >= 1");
  const Scene scene = bench_scene(config);
  const Voice prepared = prepare(scene);

  BenchResult result;
  result.transverse = prepared.basis().size();
  result.inplane = prepared.basis().inplane.size();
  result.samples = scene.sample_count();
  for (int rep = 0; rep < config.repetitions; ++rep) {
    Voice voice = prepared;
    const auto begin = std::chrono::steady_clock::now();
    const AudioBuffer audio = voice.render(result.samples);
    const auto end = std::chrono::steady_clock::now();
    if (audio.frames() != static_cast<std::size_t>(result.samples)) {
      throw Error(ErrorCode::kIo, "bench: short render");
    }
    result.run_seconds.push_back(std::chrono::duration<double>(end - begin).count());
  }
  std::vector<double> sorted = result.run_seconds;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  result.median_seconds = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  const auto samples = static_cast<double>(result.samples);
  result.samples_per_second = samples / result.median_seconds;
  result.realtime_factor = result.samples_per_second / config.sample_rate;
  result.ns_per_sample = 1e9 * result.median_seconds / samples;
  return result;
}

}  // namespace nlm
