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

#include "nlm/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <map>
#include <sstream>

#include "nlm/error.hpp"

namespace nlm {

std::int64_t Scene::sample_count() const {
  return std::llround(simulation.duration * simulation.sample_rate);
}

std::string PrepareReport::to_text() const {
  std::ostringstream out;
  out << "modes retained: " << transverse << " of " << truncation.candidates << " candidates\n";
  out << "  rejected (overdamped): " << truncation.rejected_overdamped << "\n";
  out << "  rejected (above Nyquist): " << truncation.rejected_nyquist << "\n";
  out << "  rejected (mode cap): " << truncation.rejected_cap << "\n";
  if (inplane > 0) out << "in-plane modes: " << inplane << "\n";
  out << "coupling tensor: " << tensor_source;
  if (tensor_source == "computed") out << " (Gauss-Legendre order " << quadrature_order << ")";
  out << "\n";
  out << "per-sample cost: " << cost_class << ", ~" << static_cast<long long>(ops_per_sample)
      << " multiply-adds\n";
  for (const auto& warning : warnings) out << "warning: " << warning << "\n";
  return out.str();
}

const std::vector<std::string>& attribute_names() {
  static const std::vector<std::string> names = {
      "youngs_modulus", "density",    "poisson_ratio",     "lx",
      "ly",             "thickness",  "cross_sectional_area", "moment_of_inertia",
      "tension",        "f_independent_loss", "f_dependent_loss", "modes_x",
      "modes_y",        "modes",      "inplane_x",         "inplane_y",
      "inplane_modes",  "nonlinear"};
  return names;
}

namespace {

constexpr std::array<double, 4> kStandardRates = {44100.0, 48000.0, 88200.0, 96000.0};

BasisRequest request_of(const SimulationSettings& sim) {
  return {sim.modes_x, sim.modes_y, sim.max_modes, sim.inplane_x, sim.inplane_y, sim.max_inplane};
}

std::vector<std::string> validate_scene(const Scene& scene, bool custom) {
  std::vector<std::string> problems;
  std::vector<std::string> warnings;
  const SimulationSettings& sim = scene.simulation;
  if (!(sim.sample_rate > 0.0) || !std::isfinite(sim.sample_rate)) {
    problems.push_back("simulation: sample_rate must be > 0");
  } else if (std::find(kStandardRates.begin(), kStandardRates.end(), sim.sample_rate) ==
             kStandardRates.end()) {
    warnings.push_back("simulation: non-standard sample_rate " + std::to_string(sim.sample_rate));
  }
  if (!(sim.duration > 0.0) || !std::isfinite(sim.duration)) problems.push_back("simulation: duration must be > 0");
  if (!(sim.divergence_bound > 0.0)) problems.push_back("simulation: divergence_bound must be > 0");
  if (sim.max_modes < 0 || sim.max_inplane < 0) problems.push_back("simulation: mode caps must be >= 0");
  if (!custom) {
    if (sim.modes_x < 1) problems.push_back("simulation: modes_x must be >= 1");
    if (is_two_dimensional(scene.model.kind) && sim.modes_y < 1) {
      problems.push_back("simulation: modes_y must be >= 1");
    }
    if (scene.model.kind == ModelKind::kVonKarman && (sim.inplane_x < 1 || sim.inplane_y < 1)) {
      problems.push_back("simulation: vk requires inplane_x and inplane_y >= 1");
    }
    try {
      const auto model_warnings = validate(scene.model);
      warnings.insert(warnings.end(), model_warnings.begin(), model_warnings.end());
    } catch (const ValidationError& e) {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
  } else {
    const Damping& damp = scene.model.damping;
    if (!(damp.tension >= 0.0)) problems.push_back("damping: tension must be >= 0");
    if (!(damp.f_independent_loss >= 0.0)) problems.push_back("damping: f_independent_loss must be >= 0");
    if (!(damp.f_dependent_loss >= 0.0)) problems.push_back("damping: f_dependent_loss must be >= 0");
  }
  if (scene.readouts.empty()) problems.push_back("readouts: at least one readout is required");
  for (const auto& event : scene.excitations) {
    try {
      validate_event(event);
    } catch (const ValidationError& e) {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
  }
  for (const auto& readout : scene.readouts) {
    if (readout.position.empty() == !readout.point.has_value()) {
      problems.push_back("readouts: exactly one of position or point is required");
    }
  }
  if (!std::isfinite(scene.gain)) problems.push_back("gain must be finite");
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return warnings;
}

void check_custom_data(const ModalData& data) {
  if (data.modes.empty()) throw Error(ErrorCode::kCustomData, "modal data has no modes");
  if (!(data.rho > 0.0)) throw Error(ErrorCode::kCustomData, "modal data: rho must be > 0");
  if (!(data.bending_stiffness >= 0.0)) {
    throw Error(ErrorCode::kCustomData, "modal data: bending_stiffness must be >= 0");
  }
  if (!(data.nonlinear_gain >= 0.0) || !std::isfinite(data.nonlinear_gain)) {
    throw Error(ErrorCode::kCustomData, "modal data: nonlinear_gain must be finite and >= 0");
  }
  for (std::size_t k = 0; k < data.modes.size(); ++k) {
    const auto& mode = data.modes[k];
    if (!(mode.lambda > 0.0) || !(mode.norm_sq > 0.0)) {
      throw Error(ErrorCode::kCustomData,
                  "modal data: mode " + std::to_string(k) + " needs lambda > 0 and norm_sq > 0");
    }
    for (const auto& [name, coords] : data.points) {
      if (!mode.shape_at.contains(name)) {
        throw Error(ErrorCode::kCustomData, "modal data: mode " + std::to_string(k) +
                                                " has no shape value at point '" + name + "'");
      }
    }
  }
  for (const auto& mode : data.inplane) {
    if (!(mode.zeta4 > 0.0) || !(mode.norm_sq > 0.0)) {
      throw Error(ErrorCode::kCustomData, "modal data: in-plane modes need zeta4 > 0 and norm_sq > 0");
    }
  }
  if (data.kind == ModelKind::kVonKarman && (data.inplane.empty() || data.h_dims.empty())) {
    throw Error(ErrorCode::kCustomData, "vk requires coupling data or computable basis");
  }
  if (!data.h_dims.empty()) {
    const std::size_t n = data.inplane.size();
    const std::size_t m = data.modes.size();
    if (data.h_dims.size() != 3 || data.h_dims[0] != n || data.h_dims[1] != m || data.h_dims[2] != m ||
        data.h_data.size() != n * m * m) {
      throw Error(ErrorCode::kCustomData, "tensor dims mismatch: expected [" + std::to_string(n) +
                                              "," + std::to_string(m) + "," + std::to_string(m) + "]");
    }
  }
}

CouplingTensor tensor_from_data(const ModalData& data) {
  CouplingTensor tensor;
  tensor.inplane = data.inplane.size();
  tensor.transverse = data.modes.size();
  tensor.data = data.h_data;
  for (const auto& mode : data.inplane) {
    tensor.zeta4.push_back(mode.zeta4);
    tensor.inplane_norm_sq.push_back(mode.norm_sq);
  }
  if (!tensor.symmetric()) {
    throw Error(ErrorCode::kCustomData, "coupling tensor is not symmetric in its last two indices");
  }
  return tensor;
}

}  // namespace

std::vector<TransverseMode> Voice::candidates() const {
  if (!custom_data_) return enumerate_transverse(scene_.model, request_of(scene_.simulation));
  std::vector<TransverseMode> modes;
  modes.reserve(custom_data_->modes.size());
  for (std::size_t k = 0; k < custom_data_->modes.size(); ++k) {
    TransverseMode mode;
    mode.index = {static_cast<int>(k) + 1, 0};
    mode.lambda = custom_data_->modes[k].lambda;
    mode.norm_sq = custom_data_->modes[k].norm_sq;
    modes.push_back(mode);
  }
  return modes;
}

double Voice::nonlinear_gain_value() const {
  if (custom_data_) return custom_data_->nonlinear_gain;
  return nonlinear_gain(scene_.model, derive_constants(scene_.model));
}

void Voice::attach_points() {
  basis_.point_shapes.clear();
  if (!custom_data_) return;
  for (const auto& [name, coords] : custom_data_->points) {
    std::vector<double> values;
    values.reserve(basis_.size());
    for (const auto& mode : basis_.transverse) {
      values.push_back(custom_data_->modes[static_cast<std::size_t>(mode.index.m - 1)].shape_at.at(name));
    }
    basis_.point_shapes.emplace(name, std::move(values));
  }
}

void Voice::rebuild_outputs() {
  std::vector<ProjectedExcitation> projected;
  projected.reserve(scene_.excitations.size());
  for (std::size_t e = 0; e < scene_.excitations.size(); ++e) {
    const ExcitationEvent& event = scene_.excitations[e];
    if (e < projected_.size()) {
      projected.push_back({projection_weights(event, basis_), std::move(projected_[e].signal)});
    } else {
      projected.push_back(project(event, basis_, scene_.simulation.sample_rate));
    }
  }
  projected_ = std::move(projected);

  const auto modes = static_cast<Eigen::Index>(basis_.size());
  readout_.resize(static_cast<Eigen::Index>(scene_.readouts.size()), modes);
  for (std::size_t c = 0; c < scene_.readouts.size(); ++c) {
    const Readout& readout = scene_.readouts[c];
    ExcitationEvent probe;
    probe.position = readout.position;
    probe.point = readout.point;
    Eigen::ArrayXd shapes;
    try {
      shapes = projection_weights(probe, basis_);
    } catch (const Error& e) {
      if (std::string(e.what()).starts_with("point outside domain")) {
        throw Error(ErrorCode::kBasis, "readout outside domain");
      }
      if (e.code() == ErrorCode::kCustomData) {
        throw Error(ErrorCode::kCustomData,
                    "missing point referenced by excitation/readout: " + readout.point.value_or("?"));
      }
      throw;
    }
    for (Eigen::Index k = 0; k < modes; ++k) {
      readout_(static_cast<Eigen::Index>(c), k) = shapes[k] / basis_.transverse[k].norm_sq;
    }
  }
  last_output_ = Eigen::ArrayXd::Zero(readout_.rows());
}

void Voice::build(Change change, bool material_changed) {
  const SimulationSettings& sim = scene_.simulation;
  physics_ = custom_data_ ? ModalPhysics{custom_data_->bending_stiffness, custom_data_->rho,
                                         scene_.model.damping.tension,
                                         scene_.model.damping.f_independent_loss,
                                         scene_.model.damping.f_dependent_loss}
                          : modal_physics(scene_.model, derive_constants(scene_.model));

  auto tuned = candidates();
  for (auto& mode : tuned) tune_mode(mode, physics_);
  TruncationResult truncated = truncate_stable(std::move(tuned), sim.sample_rate, sim.max_modes);
  if (truncated.retained.empty()) throw Error(ErrorCode::kBasis, "all modes rejected");

  bool same_modes = change != Change::kFull && basis_.size() == truncated.retained.size();
  for (std::size_t k = 0; same_modes && k < basis_.size(); ++k) {
    same_modes = basis_.transverse[k].index == truncated.retained[k].index;
  }

  if (same_modes) {
    basis_.transverse = std::move(truncated.retained);
    basis_.report = truncated.report;
  } else {
    const ModalBasis previous = std::move(basis_);
    const ModalState previous_state = std::move(state_);

    basis_ = ModalBasis{};
    basis_.kind = scene_.model.kind;
    basis_.custom = custom_data_ != nullptr;
    if (!custom_data_) {
      basis_.lx = scene_.model.geometry.lx;
      basis_.ly = is_two_dimensional(basis_.kind) ? scene_.model.geometry.ly.value_or(0.0) : 0.0;
    }
    basis_.transverse = std::move(truncated.retained);
    basis_.report = truncated.report;
    if (basis_.kind == ModelKind::kVonKarman) {
      if (custom_data_) {
        for (std::size_t n = 0; n < custom_data_->inplane.size(); ++n) {
          basis_.inplane.push_back({{static_cast<int>(n) + 1, 0},
                                    custom_data_->inplane[n].zeta4,
                                    custom_data_->inplane[n].norm_sq});
        }
      } else {
        basis_.inplane = enumerate_inplane(basis_.lx, basis_.ly, request_of(sim));
      }
    }
    attach_points();
    ++counters_.basis;

    if (basis_.kind == ModelKind::kVonKarman) {
      if (custom_data_) {
        std::vector<std::size_t> keep;
        for (const auto& mode : basis_.transverse) keep.push_back(static_cast<std::size_t>(mode.index.m - 1));
        coupling_ = slice_transverse(tensor_from_data(*custom_data_), keep);
      } else {
        const int order = sim.quadrature_order > 0 ? sim.quadrature_order : default_quadrature_order(basis_);
        coupling_ = compute_H(basis_, order, preparation_threads());
        report_.quadrature_order = order;
      }
      ++counters_.coupling;
    } else {
      coupling_.reset();
    }

    // Carry the state over by mode identity; new modes start at rest.
    state_ = ModalState::zeros(basis_.size());
    state_.sample_index = previous_state.sample_index;
    std::map<ModeIndex, std::size_t> old_slot;
    for (std::size_t k = 0; k < previous.size(); ++k) old_slot.emplace(previous.transverse[k].index, k);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const auto it = old_slot.find(basis_.transverse[k].index);
      if (it == old_slot.end() || previous_state.current.size() == 0) continue;
      state_.current[static_cast<Eigen::Index>(k)] = previous_state.current[static_cast<Eigen::Index>(it->second)];
      state_.previous[static_cast<Eigen::Index>(k)] = previous_state.previous[static_cast<Eigen::Index>(it->second)];
    }
    rebuild_outputs();
  }

  coeffs_ = compute_coeffs(basis_, sim.sample_rate);
  ++counters_.coefficients;
  if (!same_modes || material_changed) {
    nonlinear_ = make_nonlinear_config(basis_, nonlinear_gain_value(), sim.nonlinear,
                                       coupling_ ? &*coupling_ : nullptr);
  }
  nonlinear_.enabled = sim.nonlinear;

  report_.truncation = basis_.report;
  report_.transverse = basis_.size();
  report_.inplane = basis_.inplane.size();
  report_.tensor_source = basis_.kind != ModelKind::kVonKarman ? "none" : (custom_data_ ? "loaded" : "computed");
  const double modes = static_cast<double>(basis_.size());
  const double chans = static_cast<double>(scene_.readouts.size());
  report_.ops_per_sample = modes * (4.0 + chans);
  if (basis_.kind == ModelKind::kVonKarman) {
    report_.cost_class = "O(N*M^2)";
    report_.ops_per_sample += static_cast<double>(nonlinear_.plate->stored_entries()) +
                              2.0 * static_cast<double>(basis_.inplane.size()) * modes;
  } else {
    report_.cost_class = "O(M)";
    report_.ops_per_sample += 4.0 * modes;
  }
  report_.warnings = warnings_;
}

AudioBuffer Voice::render(std::int64_t sample_count) {
  const SimulationSettings& sim = scene_.simulation;
  AudioBuffer audio;
  audio.sample_rate = sim.sample_rate;
  const auto chans = static_cast<std::size_t>(readout_.rows());
  audio.channels.assign(chans, std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(sample_count, 0))));

  const auto modes = static_cast<Eigen::Index>(basis_.size());
  // Each sample delivers the impulse T * force, so the response to a sampled
  // force signal does not depend on the sample rate.
  const double period = coeffs_.period;
  const double ext_scale = period / physics_.density;
  const bool velocity = sim.output == OutputQuantity::kVelocity;
  Eigen::ArrayXd force(modes);
  Eigen::ArrayXd nl_force_buffer(modes);
  Eigen::VectorXd output(readout_.rows());

  for (std::int64_t s = 0; s < sample_count; ++s) {
    const std::int64_t n = state_.sample_index;
    force.setZero();
    for (const auto& excitation : projected_) {
      if (n < excitation.signal.start_sample || n >= excitation.signal.end_sample()) continue;
      force += (excitation.signal.at(n) * ext_scale) * excitation.weights;
    }
    if (nonlinear_.enabled) {
      nl_force(state_, nonlinear_, nl_force_buffer);
      force -= period * nl_force_buffer;
    }
    step(state_, coeffs_, force);
    if (!std::isfinite(state_.current.sum())) throw DivergedError(n, "non-finite modal state");

    // Row by row, so a channel's summation order does not depend on how many
    // channels there are.
    for (Eigen::Index c = 0; c < output.size(); ++c) output[c] = readout_.row(c).dot(state_.current.matrix());
    for (std::size_t c = 0; c < chans; ++c) {
      const double y = output[static_cast<Eigen::Index>(c)];
      if (!(std::fabs(y) <= sim.divergence_bound)) {
        throw DivergedError(n, "displacement exceeds " + std::to_string(sim.divergence_bound) + " m");
      }
      double value = y;
      if (velocity) {
        value = (y - last_output_[static_cast<Eigen::Index>(c)]) * sim.sample_rate;
        last_output_[static_cast<Eigen::Index>(c)] = y;
      }
      audio.channels[c][static_cast<std::size_t>(s)] = scene_.gain * value;
    }
  }
  return audio;
}

AttributeScope apply_attribute(Scene& scene, std::string_view name, double value) {
  const auto& names = attribute_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorCode::kAttribute, "unknown attribute: " + std::string(name));
  }
  ModelSpec& model = scene.model;
  SimulationSettings& sim = scene.simulation;
  const auto as_count = [&](double v) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e6) {
      throw Error(ErrorCode::kAttribute, std::string(name) + " must be a non-negative integer");
    }
    return static_cast<int>(v);
  };

  AttributeScope scope = AttributeScope::kSpectrum;
  if (name == "nonlinear") {
    scope = AttributeScope::kToggle;
  } else if (name == "youngs_modulus" || name == "density" || name == "poisson_ratio") {
    scope = AttributeScope::kMaterial;
  } else if (name == "lx" || name == "ly" || name == "thickness" || name == "cross_sectional_area" ||
             name == "moment_of_inertia") {
    scope = AttributeScope::kGeometry;
  } else if (name.starts_with("modes") || name.starts_with("inplane")) {
    scope = AttributeScope::kModeCounts;
  }
  if (scene.custom_data && scope != AttributeScope::kToggle && scope != AttributeScope::kSpectrum) {
    throw Error(ErrorCode::kAttribute,
                "attribute locked: custom modal data loaded (" + std::string(name) + ")");
  }

  if (name == "nonlinear") sim.nonlinear = value != 0.0;
  else if (name == "youngs_modulus") model.material.youngs_modulus = units::gpa_to_pa(value);
  else if (name == "density") model.material.mass_density = value;
  else if (name == "poisson_ratio") model.material.poisson_ratio = value;
  else if (name == "tension") model.damping.tension = value;
  else if (name == "f_independent_loss") model.damping.f_independent_loss = value;
  else if (name == "f_dependent_loss") model.damping.f_dependent_loss = value;
  else if (name == "lx") model.geometry.lx = value;
  else if (name == "ly") model.geometry.ly = value;
  else if (name == "thickness") model.geometry.thickness = value;
  else if (name == "cross_sectional_area") model.geometry.cross_sectional_area = units::mm2_to_m2(value);
  else if (name == "moment_of_inertia") model.geometry.moment_of_inertia = units::mm4_to_m4(value);
  else if (name == "modes_x") sim.modes_x = as_count(value);
  else if (name == "modes_y") sim.modes_y = as_count(value);
  else if (name == "modes") sim.max_modes = as_count(value);
  else if (name == "inplane_x") sim.inplane_x = as_count(value);
  else if (name == "inplane_y") sim.inplane_y = as_count(value);
  else if (name == "inplane_modes") sim.max_inplane = as_count(value);
  return scope;
}

void Voice::set_attribute(std::string_view name, double value) {
  Voice next = *this;
  const AttributeScope scope = apply_attribute(next.scene_, name, value);
  if (scope == AttributeScope::kToggle) {
    next.nonlinear_.enabled = next.scene_.simulation.nonlinear;
  } else {
    next.warnings_ = validate_scene(next.scene_, next.custom());
    const bool full = scope == AttributeScope::kGeometry || scope == AttributeScope::kModeCounts;
    next.build(full ? Change::kFull : Change::kSpectrum,
               scope == AttributeScope::kMaterial || scope == AttributeScope::kGeometry);
  }
  *this = std::move(next);
}

Voice prepare(const Scene& scene) {
  if (scene.custom_data) {
    return load_custom_modal_data(scene, read_modal_data(*scene.custom_data));
  }
  Voice voice;
  voice.scene_ = scene;
  voice.warnings_ = validate_scene(scene, false);
  voice.build(Voice::Change::kFull, true);
  return voice;
}

Voice load_custom_modal_data(const Scene& scene, const ModalData& data) {
  if (data.kind != scene.model.kind) {
    throw Error(ErrorCode::kCustomData, "modal data is for model '" + std::string(to_string(data.kind)) +
                                            "' but the scene declares '" +
                                            std::string(to_string(scene.model.kind)) + "'");
  }
  check_custom_data(data);
  Voice voice;
  voice.scene_ = scene;
  voice.custom_data_ = std::make_shared<const ModalData>(data);
  voice.warnings_ = validate_scene(scene, true);
  voice.build(Voice::Change::kFull, true);
  return voice;
}

AudioBuffer render_scene(const Scene& scene) {
  Voice voice = prepare(scene);
  return voice.render(scene.sample_count());
}

ModalData export_modal_data(const Voice& voice) {
  const ModalBasis& basis = voice.basis();
  const Scene& scene = voice.scene();
  ModalData data;
  data.kind = basis.kind;
  data.rho = voice.physics().density;
  data.bending_stiffness = voice.physics().bending_stiffness;
  data.nonlinear_gain = voice.nonlinear().gain;

  std::vector<std::pair<std::string, const std::vector<double>*>> positions;
  for (std::size_t c = 0; c < scene.readouts.size(); ++c) {
    positions.emplace_back("readout_" + std::to_string(c), &scene.readouts[c].position);
  }
  for (std::size_t e = 0; e < scene.excitations.size(); ++e) {
    positions.emplace_back("excitation_" + std::to_string(e), &scene.excitations[e].position);
  }
  if (basis.custom) positions.clear();

  for (std::size_t k = 0; k < basis.size(); ++k) {
    const TransverseMode& mode = basis.transverse[k];
    ModalData::Mode out;
    out.lambda = mode.lambda;
    out.norm_sq = mode.norm_sq;
    if (!basis.custom) out.index = mode.index;
    for (const auto& [name, position] : positions) {
      out.shape_at[name] = sine_shape(mode.index, basis.lx, basis.ly, *position);
    }
    for (const auto& [name, values] : basis.point_shapes) out.shape_at[name] = values[k];
    data.modes.push_back(std::move(out));
  }
  for (const auto& [name, position] : positions) data.points[name] = *position;
  if (const ModalData* source = voice.custom_data()) {
    for (const auto& [name, coords] : source->points) data.points[name] = coords;
  }

  if (const CouplingTensor* tensor = voice.coupling()) {
    for (std::size_t n = 0; n < tensor->inplane; ++n) {
      data.inplane.push_back({tensor->zeta4[n], tensor->inplane_norm_sq[n]});
    }
    data.h_dims = {tensor->inplane, tensor->transverse, tensor->transverse};
    data.h_data = tensor->data;
  }
  return data;
}

std::vector<ModeRow> mode_table(const Voice& voice) {
  const double nyquist = std::numbers::pi * voice.scene().simulation.sample_rate;
  std::vector<ModeRow> retained;
  std::vector<ModeRow> rejected;
  std::map<ModeIndex, std::size_t> slot;
  for (std::size_t k = 0; k < voice.basis().size(); ++k) slot.emplace(voice.basis().transverse[k].index, k);
  retained.resize(slot.size());
  auto modes = voice.candidates();
  for (auto& mode : modes) {
    tune_mode(mode, voice.physics());
    ModeRow row;
    row.index = mode.index;
    row.frequency_hz = mode.omega_d / (2.0 * std::numbers::pi);
    row.decay_s = mode.gamma > 0.0 ? 1.0 / mode.gamma : std::numeric_limits<double>::infinity();
    if (const auto it = slot.find(mode.index); it != slot.end()) {
      row.retained = true;
      row.status = "retained";
      retained[it->second] = row;
      continue;
    }
    if (!(mode.omega * mode.omega > mode.gamma * mode.gamma) || !std::isfinite(mode.omega_d)) {
      row.frequency_hz = std::numeric_limits<double>::quiet_NaN();
      row.status = "overdamped";
    } else if (!(mode.omega_d < nyquist)) {
      row.status = "above Nyquist";
    } else {
      row.status = "mode cap";
    }
    rejected.push_back(row);
  }
  std::stable_sort(rejected.begin(), rejected.end(), [](const ModeRow& a, const ModeRow& b) {
    if (std::isnan(a.frequency_hz) != std::isnan(b.frequency_hz)) return std::isnan(b.frequency_hz);
    return a.frequency_hz < b.frequency_hz;
  });
  retained.insert(retained.end(), rejected.begin(), rejected.end());
  return retained;
}

Scene custom_scene_for(const Scene& scene, const std::filesystem::path& data_path) {
  Scene out = scene;
  out.custom_data = data_path;
  for (std::size_t c = 0; c < out.readouts.size(); ++c) {
    out.readouts[c].position.clear();
    out.readouts[c].point = "readout_" + std::to_string(c);
  }
  for (std::size_t e = 0; e < out.excitations.size(); ++e) {
    out.excitations[e].position.clear();
    out.excitations[e].point = "excitation_" + std::to_string(e);
  }
  return out;
}

}  // namespace nlm
