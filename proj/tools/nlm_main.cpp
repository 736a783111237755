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

// nlm: render scenes, inspect mode tables, export coupling data, benchmark.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlm/bench.hpp"
#include "nlm/engine.hpp"
#include "nlm/error.hpp"
#include "nlm/modal_data.hpp"
#include "nlm/scene_io.hpp"
#include "nlm/wav.hpp"

namespace {

double parse_override_value(const std::string& key, const std::string& text) {
  if (text == "true") return 1.0;
  if (text == "false") return 0.0;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw nlm::Error(nlm::ErrorCode::kUsage, "--set " + key + ": not a number: '" + text + "'");
  }
  return value;
}

void apply_sets(nlm::Scene& scene, const std::vector<std::string>& sets) {
  for (const auto& item : sets) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw nlm::Error(nlm::ErrorCode::kUsage, "--set expects key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    nlm::apply_override(scene, key, parse_override_value(key, item.substr(eq + 1)));
  }
}

std::string format_number(double value, const char* format) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

int run_render(const std::string& scene_path, const std::string& out_path,
               const std::vector<std::string>& sets, const std::optional<std::uint64_t>& seed) {
  nlm::Scene scene = nlm::read_scene(scene_path);
  apply_sets(scene, sets);
  if (seed) {
    // Event e draws from seed + e so simultaneous bursts stay independent.
    for (std::size_t e = 0; e < scene.excitations.size(); ++e) scene.excitations[e].seed = *seed + e;
  }
  nlm::Voice voice = nlm::prepare(scene);
  std::cerr << voice.report().to_text();
  const nlm::AudioBuffer audio = voice.render(scene.sample_count());
  nlm::write_wav(out_path, audio);
  std::cerr << "wrote " << audio.frames() << " frames x " << audio.channels.size() << " channels to "
            << out_path << "\n";
  return 0;
}

int run_modes(const std::string& scene_path, bool csv) {
  const nlm::Scene scene = nlm::read_scene(scene_path);
  const nlm::Voice voice = nlm::prepare(scene);
  const auto rows = nlm::mode_table(voice);
  const bool two_d = nlm::is_two_dimensional(scene.model.kind) && !voice.custom();
  if (csv) {
    std::cout << "index,m,n,frequency_hz,decay_s,status\n";
  } else {
    std::cout << "  #    (m,n)    frequency [Hz]   decay 1/gamma [s]   status\n";
  }
  std::size_t ordinal = 0;
  for (const auto& row : rows) {
    ++ordinal;
    const std::string freq =
        std::isnan(row.frequency_hz) ? "-" : format_number(row.frequency_hz, csv ? "%.17g" : "%.3f");
    const std::string decay = std::isinf(row.decay_s) ? "inf" : format_number(row.decay_s, csv ? "%.17g" : "%.4g");
    if (csv) {
      std::cout << ordinal << ',' << row.index.m << ',' << row.index.n << ',' << freq << ',' << decay << ','
                << row.status << '\n';
    } else {
      const std::string index = two_d ? "(" + std::to_string(row.index.m) + "," + std::to_string(row.index.n) + ")"
                                      : "(" + std::to_string(row.index.m) + ")";
      char line[160];
      std::snprintf(line, sizeof line, "%4zu  %-9s %16s   %17s   %s\n", ordinal, index.c_str(), freq.c_str(),
                    decay.c_str(), row.status == "retained" ? "retained" : ("rejected: " + row.status).c_str());
      std::cout << line;
    }
  }
  if (!csv) std::cout << "\n" << voice.report().to_text();
  return 0;
}

int run_coupling(const std::string& scene_path, const std::string& out_path, const std::string& scene_out) {
  const nlm::Scene scene = nlm::read_scene(scene_path);
  if (scene.model.kind != nlm::ModelKind::kVonKarman) {
    throw nlm::Error(nlm::ErrorCode::kValidation, "not a vk scene");
  }
  const nlm::Voice voice = nlm::prepare(scene);
  std::cerr << voice.report().to_text();
  nlm::write_modal_data(out_path, nlm::export_modal_data(voice));
  std::cerr << "wrote modal data to " << out_path << "\n";
  if (!scene_out.empty()) {
    nlm::Scene custom = nlm::custom_scene_for(scene, std::filesystem::absolute(out_path));
    nlm::write_scene(scene_out, custom);
    std::cerr << "wrote scene to " << scene_out << "\n";
  }
  return 0;
}

int run_bench(const std::string& model, int modes, int inplane, double seconds, double rate, int reps) {
  const auto kind = nlm::parse_model_kind(model);
  if (!kind) throw nlm::Error(nlm::ErrorCode::kUsage, "--model must be string, berger or vk");
  nlm::BenchConfig config;
  config.model = *kind;
  config.modes = modes;
  config.inplane = inplane;
  config.seconds = seconds;
  config.sample_rate = rate;
  config.repetitions = reps;
  const nlm::BenchResult result = nlm::run_bench(config);
  std::cout << "model: " << model << "  transverse modes: " << result.transverse;
  if (*kind == nlm::ModelKind::kVonKarman) std::cout << "  in-plane modes: " << result.inplane;
  std::cout << "\nsamples: " << result.samples << " at " << rate << " Hz, " << result.run_seconds.size()
            << " repetitions\n";
  std::cout << "median time: " << format_number(result.median_seconds, "%.4f") << " s\n";
  std::cout << "samples/s: " << format_number(result.samples_per_second, "%.0f") << "\n";
  std::cout << "real-time factor: " << format_number(result.realtime_factor, "%.2f") << "\n";
  std::cout << "ns/sample: " << format_number(result.ns_per_sample, "%.1f") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlm: non-linear modal synthesis of strings, membranes and plates"};
  app.require_subcommand(1);

  std::string scene_path;
  std::string out_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  auto* render = app.add_subcommand("render", "Render a scene to a float32 WAV file");
  render->add_option("scene", scene_path, "Scene file (JSON)")->required();
  render->add_option("-o,--output", out_path, "Output WAV path")->required();
  render->add_option("--set", sets, "Override an attribute, key=value (scene-file units)");
  render->add_option("--seed", seed, "Seed for noise excitations (event e uses seed + e)");

  bool csv = false;
  auto* modes = app.add_subcommand("modes", "List candidate modes with frequency, decay and status");
  modes->add_option("scene", scene_path, "Scene file (JSON)")->required();
  modes->add_flag("--csv", csv, "Comma-separated output");

  std::string scene_out;
  auto* coupling = app.add_subcommand("coupling", "Export modal data and coupling tensor of a vk scene");
  coupling->add_option("scene", scene_path, "Scene file (JSON)")->required();
  coupling->add_option("-o,--output", out_path, "Output modal data path (JSON)")->required();
  coupling->add_option("--scene-out", scene_out, "Also write a scene that renders the exported data");

  std::string model = "vk";
  int bench_modes = 100;
  int bench_inplane = 50;
  double seconds = 1.0;
  double rate = 44100.0;
  int reps = 5;
  auto* bench = app.add_subcommand("bench", "Time the render loop of a fixed scene");
  bench->add_option("--model", model, "string, berger or vk");
  bench->add_option("--modes", bench_modes, "Transverse modes");
  bench->add_option("--inplane", bench_inplane, "In-plane modes (vk)");
  bench->add_option("--seconds", seconds, "Rendered duration per repetition");
  bench->add_option("--sr", rate, "Sample rate");
  bench->add_option("--repeat", reps, "Repetitions (median is reported)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(nlm::ErrorCode::kUsage);
  }

  try {
    if (*render) return run_render(scene_path, out_path, sets, seed);
    if (*modes) return run_modes(scene_path, csv);
    if (*coupling) return run_coupling(scene_path, out_path, scene_out);
    if (*bench) return run_bench(model, bench_modes, bench_inplane, seconds, rate, reps);
  } catch (const nlm::DivergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const nlm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  }
  return static_cast<int>(nlm::ErrorCode::kUsage);
}
