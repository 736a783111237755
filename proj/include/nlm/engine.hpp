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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nlm/coupling.hpp"
#include "nlm/excitation.hpp"
#include "nlm/integrator.hpp"
#include "nlm/modal_basis.hpp"
#include "nlm/modal_data.hpp"
#include "nlm/model_params.hpp"
#include "nlm/wav.hpp"

namespace nlm {

enum class OutputQuantity { kDisplacement, kVelocity };

struct SimulationSettings {
  double sample_rate = 44100.0;
  double duration = 1.0;
  int modes_x = 1;
  int modes_y = 1;
  int max_modes = 0;
  int inplane_x = 0;
  int inplane_y = 0;
  int max_inplane = 0;
  bool nonlinear = true;
  int quadrature_order = 0;  // 0 = default rule
  OutputQuantity output = OutputQuantity::kDisplacement;
  double divergence_bound = 1e6;  // m
};

struct Readout {
  std::vector<double> position;
  std::optional<std::string> point;
};

struct Scene {
  /// Material and geometry are unused when `custom_data` is set.
  ModelSpec model;
  std::optional<std::filesystem::path> custom_data;
  SimulationSettings simulation;
  std::vector<ExcitationEvent> excitations;
  std::vector<Readout> readouts;
  double gain = 1.0;

  std::int64_t sample_count() const;
};

struct PrepareReport {
  TruncationReport truncation;
  std::size_t transverse = 0;
  std::size_t inplane = 0;
  std::string tensor_source;  // "none", "computed", "loaded"
  int quadrature_order = 0;
  std::string cost_class;  // "O(M)" or "O(N*M^2)"
  double ops_per_sample = 0.0;
  std::vector<std::string> warnings;

  std::string to_text() const;
};

/// How often each piece of derived data has been rebuilt. Used to check that
/// attribute changes recompute exactly their dependents.
struct RebuildCounters {
  int basis = 0;
  int coupling = 0;
  int coefficients = 0;
};

/// One candidate mode as reported by the `modes` command.
struct ModeRow {
  ModeIndex index;
  double frequency_hz = 0.0;  // omega_d / 2 pi; NaN when overdamped
  double decay_s = 0.0;       // 1 / gamma; +inf when lossless
  bool retained = false;
  std::string status;  // "retained", "overdamped", "above Nyquist", "mode cap"
};

class Voice;

/// One synthesis voice. Not thread-safe; copies are independent.
class Voice {
 public:
  const Scene& scene() const { return scene_; }
  const ModalBasis& basis() const { return basis_; }
  const UpdateCoeffs& coeffs() const { return coeffs_; }
  const NonlinearConfig& nonlinear() const { return nonlinear_; }
  const ModalState& state() const { return state_; }
  const PrepareReport& report() const { return report_; }
  const RebuildCounters& counters() const { return counters_; }
  /// Coupling tensor over the retained modes (vk only).
  const CouplingTensor* coupling() const { return coupling_ ? &*coupling_ : nullptr; }
  const ModalPhysics& physics() const { return physics_; }
  /// R[c][mu] = Phi_mu(x_c) / |Phi_mu|^2.
  const Eigen::MatrixXd& readout_weights() const { return readout_; }
  const std::vector<ProjectedExcitation>& excitations() const { return projected_; }
  bool custom() const { return custom_data_ != nullptr; }
  const ModalData* custom_data() const { return custom_data_.get(); }
  std::size_t channels() const { return static_cast<std::size_t>(readout_.rows()); }

  /// Advances `sample_count` samples from the current state. Per sample:
  /// external force, non-linear force, step, readout. Throws DivergedError
  /// on a non-finite state or a readout beyond the divergence bound.
  AudioBuffer render(std::int64_t sample_count);

  /// Changes one attribute (scene-file units) and recomputes its dependents,
  /// carrying the modal state over by mode identity. Leaves the voice
  /// unchanged if the new value is rejected.
  void set_attribute(std::string_view name, double value);

 private:
  friend Voice prepare(const Scene& scene);
  friend Voice load_custom_modal_data(const Scene& scene, const ModalData& data);
  friend std::vector<ModeRow> mode_table(const Voice& voice);

  enum class Change { kNonlinearToggle, kSpectrum, kFull };

  Voice() = default;
  void build(Change change, bool material_changed);
  std::vector<TransverseMode> candidates() const;
  void attach_points();
  void rebuild_outputs();
  double nonlinear_gain_value() const;

  Scene scene_;
  std::shared_ptr<const ModalData> custom_data_;
  ModalPhysics physics_;
  ModalBasis basis_;
  std::optional<CouplingTensor> coupling_;
  UpdateCoeffs coeffs_;
  NonlinearConfig nonlinear_;
  ModalState state_;
  std::vector<ProjectedExcitation> projected_;
  Eigen::MatrixXd readout_;
  Eigen::ArrayXd last_output_;
  PrepareReport report_;
  RebuildCounters counters_;
  std::vector<std::string> warnings_;
};

/// Validates the scene and builds a voice from the analytic basis, or from
/// the scene's custom_data file when set.
Voice prepare(const Scene& scene);

/// Builds a voice from modal data. Everything else comes from the scene;
/// readouts and excitations refer to the file's points by name.
Voice load_custom_modal_data(const Scene& scene, const ModalData& data);

/// prepare + render of the full scene duration.
AudioBuffer render_scene(const Scene& scene);

/// Modal data of a voice: retained modes, shape values at every readout
/// ("readout_<i>") and excitation ("excitation_<j>") position, and the
/// coupling tensor for vk.
ModalData export_modal_data(const Voice& voice);

/// The scene that renders `data` in place of `scene`'s analytic basis:
/// positions replaced by the exported point names, material and geometry
/// removed.
Scene custom_scene_for(const Scene& scene, const std::filesystem::path& data_path);

/// Every candidate of the voice's grid (or custom file), retained modes first
/// in basis order, then the rejected ones by ascending frequency.
std::vector<ModeRow> mode_table(const Voice& voice);

/// Names accepted by Voice::set_attribute.
const std::vector<std::string>& attribute_names();

/// How far an attribute change reaches into the derived data.
enum class AttributeScope { kToggle, kSpectrum, kMaterial, kGeometry, kModeCounts };

/// Writes one attribute into a scene description, converting display units
/// to SI. Everything the data file fixes (shape and mode counts) is locked
/// on custom-data scenes. Throws Error(kAttribute) on unknown or locked names.
AttributeScope apply_attribute(Scene& scene, std::string_view name, double value);

}  // namespace nlm
