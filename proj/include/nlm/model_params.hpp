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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlm {

enum class ModelKind { kString, kBerger, kVonKarman };

/// Scene-file spelling: "string", "berger", "vk".
std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

inline bool is_two_dimensional(ModelKind kind) { return kind != ModelKind::kString; }

// All fields are SI. Display units (GPa, mm^2, mm^4) are converted once at the
// scene-file boundary, see units:: below.

struct Material {
  double youngs_modulus = 0.0;  // Pa
  double mass_density = 0.0;    // kg/m^3
  std::optional<double> poisson_ratio;
};

struct Geometry {
  double lx = 0.0;  // m; string length L or plate side L_x
  std::optional<double> ly;                    // m, 2-D only
  std::optional<double> thickness;             // m, 2-D only
  std::optional<double> cross_sectional_area;  // m^2, string only
  std::optional<double> moment_of_inertia;     // m^4, string only
};

struct Damping {
  double f_independent_loss = 0.0;  // d1
  double f_dependent_loss = 0.0;    // d3
  double tension = 0.0;             // T0: N (string) or N/m (2-D)
};

struct ModelSpec {
  ModelKind kind = ModelKind::kString;
  Material material;
  Geometry geometry;
  Damping damping;
};

struct DerivedConstants {
  double bending_stiffness = 0.0;  // D: N m^2 (string) or N m (2-D)
  double density = 0.0;            // rho: kg/m (string) or kg/m^2 (2-D)
};

/// Checks every invariant of the parameter types and throws ValidationError
/// listing all violations. Returns warnings (e.g. an ignored string Poisson
/// ratio) on success.
std::vector<std::string> validate(const ModelSpec& spec);

/// D and rho. String: D = E*I, rho = rho_m*A. Two-dimensional models:
/// D = (E * ((h*h*h) / 12)) / (1 - nu*nu), evaluated in exactly that order,
/// and rho = rho_m*h. A string without I is an ideal flexible string (D = 0).
DerivedConstants derive_constants(const ModelSpec& spec);

/// Non-linear gain of the modal force law for `spec.kind`:
/// string EA/(2 L rho), membrane E h/(2 Lx Ly (1 - nu^2) rho), plate E/(2 rho_m).
double nonlinear_gain(const ModelSpec& spec, const DerivedConstants& derived);

namespace units {

inline double gpa_to_pa(double gpa) { return gpa * 1e9; }
inline double pa_to_gpa(double pa) { return pa / 1e9; }
inline double mm2_to_m2(double mm2) { return mm2 / 1e6; }
inline double m2_to_mm2(double m2) { return m2 * 1e6; }
inline double mm4_to_m4(double mm4) { return mm4 / 1e12; }
inline double m4_to_mm4(double m4) { return m4 * 1e12; }

}  // namespace units

}  // namespace nlm
