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

#include "nlm/model_params.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "nlm/error.hpp"

namespace nlm {

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(ErrorCode::kValidation,
            std::accumulate(std::next(problems.begin(), problems.empty() ? 0 : 1),
                            problems.end(),
                            problems.empty() ? std::string() : problems.front(),
                            [](std::string acc, const std::string& p) {
                              return std::move(acc) + "; " + p;
                            })),
      problems_(std::move(problems)) {}

DivergedError::DivergedError(std::int64_t sample_index, const std::string& reason)
    : Error(ErrorCode::kDiverged,
            "diverged at sample " + std::to_string(sample_index) + ": " + reason),
      sample_index_(sample_index) {}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kString:
      return "string";
    case ModelKind::kBerger:
      return "berger";
    case ModelKind::kVonKarman:
      return "vk";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "string") return ModelKind::kString;
  if (name == "berger") return ModelKind::kBerger;
  if (name == "vk") return ModelKind::kVonKarman;
  return std::nullopt;
}

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::vector<std::string> validate(const ModelSpec& spec) {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  const bool two_d = is_two_dimensional(spec.kind);
  const Material& mat = spec.material;
  const Geometry& geo = spec.geometry;

  if (!positive(mat.youngs_modulus)) errors.push_back("material: youngs_modulus must be > 0");
  if (!positive(mat.mass_density)) errors.push_back("material: density must be > 0");
  if (two_d) {
    if (!mat.poisson_ratio) {
      errors.push_back("material: poisson_ratio is required for " +
                       std::string(to_string(spec.kind)));
    } else if (!(*mat.poisson_ratio >= 0.0 && *mat.poisson_ratio < 0.5)) {
      errors.push_back("material: poisson_ratio out of range [0, 0.5)");
    }
  } else if (mat.poisson_ratio) {
    warnings.push_back("material: poisson_ratio is ignored for the string model");
  }

  if (!positive(geo.lx)) errors.push_back("geometry: lx must be > 0");
  if (two_d) {
    if (!geo.ly) {
      errors.push_back("geometry: ly is required for 2-D models");
    } else if (!positive(*geo.ly)) {
      errors.push_back("geometry: ly must be > 0");
    }
    if (!geo.thickness) {
      errors.push_back("geometry: thickness is required for 2-D models");
    } else if (!positive(*geo.thickness)) {
      errors.push_back("geometry: thickness must be > 0");
    }
    if (geo.cross_sectional_area) {
      errors.push_back("geometry: cross_sectional_area applies to the string model only");
    }
    if (geo.moment_of_inertia) {
      errors.push_back("geometry: moment_of_inertia is h^3/12 for 2-D models and cannot be set");
    }
  } else {
    if (geo.ly) errors.push_back("geometry: ly applies to 2-D models only");
    if (geo.thickness) errors.push_back("geometry: thickness applies to 2-D models only");
    if (!geo.cross_sectional_area) {
      errors.push_back("geometry: cross_sectional_area is required for the string model");
    } else if (!positive(*geo.cross_sectional_area)) {
      errors.push_back("geometry: cross_sectional_area must be > 0");
    }
    if (geo.moment_of_inertia && !positive(*geo.moment_of_inertia)) {
      errors.push_back("geometry: moment_of_inertia must be > 0");
    }
  }

  const Damping& damp = spec.damping;
  if (!non_negative(damp.f_independent_loss)) errors.push_back("damping: f_independent_loss must be >= 0");
  if (!non_negative(damp.f_dependent_loss)) errors.push_back("damping: f_dependent_loss must be >= 0");
  if (!non_negative(damp.tension)) errors.push_back("damping: tension must be >= 0");

  if (!errors.empty()) throw ValidationError(std::move(errors));
  return warnings;
}

DerivedConstants derive_constants(const ModelSpec& spec) {
  const Material& mat = spec.material;
  const Geometry& geo = spec.geometry;
  DerivedConstants out;
  if (spec.kind == ModelKind::kString) {
    out.bending_stiffness = mat.youngs_modulus * geo.moment_of_inertia.value_or(0.0);
    out.density = mat.mass_density * geo.cross_sectional_area.value_or(0.0);
  } else {
    const double h = geo.thickness.value_or(0.0);
    const double nu = mat.poisson_ratio.value_or(0.0);
    const double inertia = (h * h * h) / 12.0;
    out.bending_stiffness = (mat.youngs_modulus * inertia) / (1.0 - nu * nu);
    out.density = mat.mass_density * h;
  }
  return out;
}

double nonlinear_gain(const ModelSpec& spec, const DerivedConstants& derived) {
  const Material& mat = spec.material;
  const Geometry& geo = spec.geometry;
  switch (spec.kind) {
    case ModelKind::kString:
      return (mat.youngs_modulus * geo.cross_sectional_area.value_or(0.0)) /
             (2.0 * geo.lx * derived.density);
    case ModelKind::kBerger: {
      const double nu = mat.poisson_ratio.value_or(0.0);
      return (mat.youngs_modulus * geo.thickness.value_or(0.0)) /
             (2.0 * geo.lx * geo.ly.value_or(0.0) * (1.0 - nu * nu) * derived.density);
    }
    case ModelKind::kVonKarman:
      return mat.youngs_modulus / (2.0 * mat.mass_density);
  }
  return 0.0;
}

}  // namespace nlm
