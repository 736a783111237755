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

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nlm/model_params.hpp"

namespace nlm {

/// Half-wave counts of a sine mode. `n == 0` marks a one-dimensional index
/// (strings, and custom modes where `m` is the 1-based ordinal in the file).
struct ModeIndex {
  int m = 1;
  int n = 0;

  auto operator<=>(const ModeIndex&) const = default;
};

std::string to_string(const ModeIndex& index);

/// Constants entering the modal frequencies and decay rates.
struct ModalPhysics {
  double bending_stiffness = 0.0;
  double density = 0.0;
  double tension = 0.0;
  double d1 = 0.0;
  double d3 = 0.0;
};

ModalPhysics modal_physics(const ModelSpec& spec, const DerivedConstants& derived);

struct TransverseMode {
  ModeIndex index;
  double lambda = 0.0;   // Laplacian eigenvalue, 1/m^2
  double norm_sq = 0.0;  // squared L2 norm of the raw shape
  double omega = 0.0;    // rad/s
  double gamma = 0.0;    // 1/s
  double omega_d = 0.0;  // damped frequency; NaN when not oscillatory
};

struct InPlaneMode {
  ModeIndex index;
  double zeta4 = 0.0;  // biharmonic eigenvalue, 1/m^4
  double norm_sq = 0.0;
};

struct TruncationReport {
  std::size_t candidates = 0;
  std::size_t retained = 0;
  std::size_t rejected_overdamped = 0;
  std::size_t rejected_nyquist = 0;
  std::size_t rejected_cap = 0;
};

struct ModalBasis {
  ModelKind kind = ModelKind::kString;
  double lx = 0.0;
  double ly = 0.0;  // zero for strings
  std::vector<TransverseMode> transverse;  // ascending omega, ties by index
  std::vector<InPlaneMode> inplane;        // ascending zeta4, ties by index
  bool custom = false;
  /// Custom bases only: shape value of every retained transverse mode at
  /// each named point.
  std::map<std::string, std::vector<double>> point_shapes;
  TruncationReport report;

  std::size_t size() const { return transverse.size(); }
};

/// Candidate grid and final caps. Zero caps keep everything that survives
/// stability truncation.
struct BasisRequest {
  int modes_x = 1;
  int modes_y = 1;
  int max_modes = 0;
  int inplane_x = 0;
  int inplane_y = 0;
  int max_inplane = 0;
};

/// sin(pi t) with exact zeros at integers and exact +-1 at half-integers.
double sin_pi(double t);
/// cos(pi t) with exact zeros at half-integers and exact +-1 at integers.
double cos_pi(double t);

/// Fills the frequencies and decay rate from lambda. omega_d is computed as
/// sqrt((omega - gamma)(omega + gamma)).
void tune_mode(TransverseMode& mode, const ModalPhysics& physics);

/// Analytic simply supported eigenpairs over the requested index grid
/// (eigenvalue and norm only; call tune_mode afterwards).
std::vector<TransverseMode> enumerate_transverse(const ModelSpec& spec, const BasisRequest& request);

/// Sine in-plane family over its own grid, zeta4 = ((m pi/Lx)^2 + (n pi/Ly)^2)^2,
/// sorted and capped.
std::vector<InPlaneMode> enumerate_inplane(double lx, double ly, const BasisRequest& request);

struct TruncationResult {
  std::vector<TransverseMode> retained;
  TruncationReport report;
};

/// Keeps exactly the modes with omega^2 > gamma^2 and omega_d < pi * fs,
/// sorted by (omega, index); then applies `max_modes` (0 = no cap).
TruncationResult truncate_stable(std::vector<TransverseMode> candidates, double sample_rate,
                                 int max_modes = 0);

/// Analytic basis for rectangular (or 1-D) simply supported domains. Throws
/// Error(kBasis) when truncation leaves no mode.
ModalBasis build_basis(const ModelSpec& spec, const BasisRequest& request, double sample_rate);

/// Phi_mode(point) of an analytic basis; exactly zero on the boundary.
double eval_shape(const ModalBasis& basis, const ModeIndex& mode, std::span<const double> point);

/// Shape of a sine mode on a domain of the given extents, without domain checks.
double sine_shape(const ModeIndex& mode, double lx, double ly, std::span<const double> point);

/// Throws Error(kBasis, "point outside domain") when `point` is not in the
/// closed domain of the basis geometry or has the wrong dimension.
void check_in_domain(ModelKind kind, double lx, double ly, std::span<const double> point);

}  // namespace nlm
