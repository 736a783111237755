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

#include "nlm/modal_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlm/error.hpp"

namespace nlm {

std::string to_string(const ModeIndex& index) {
  if (index.n == 0) return std::to_string(index.m);
  return "(" + std::to_string(index.m) + "," + std::to_string(index.n) + ")";
}

ModalPhysics modal_physics(const ModelSpec& spec, const DerivedConstants& derived) {
  return ModalPhysics{derived.bending_stiffness, derived.density, spec.damping.tension,
                      spec.damping.f_independent_loss, spec.damping.f_dependent_loss};
}

double sin_pi(double t) {
  if (!std::isfinite(t)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(t, 2.0);
  if (r < 0.0) r += 2.0;
  double sign = 1.0;
  if (r >= 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r == 0.0) return 0.0;
  if (r == 0.5) return sign;
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

double cos_pi(double t) {
  if (!std::isfinite(t)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(std::fabs(t), 2.0);
  if (r > 1.0) r = 2.0 - r;
  if (r == 0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0) return -1.0;
  if (r > 0.5) return -std::cos(std::numbers::pi * (1.0 - r));
  return std::cos(std::numbers::pi * r);
}

void tune_mode(TransverseMode& mode, const ModalPhysics& physics) {
  const double lambda = mode.lambda;
  const double omega_sq =
      (physics.bending_stiffness * lambda * lambda + physics.tension * lambda) / physics.density;
  mode.omega = std::sqrt(omega_sq);
  mode.gamma = (physics.d1 + physics.d3 * lambda) / (2.0 * physics.density);
  const double product = (mode.omega - mode.gamma) * (mode.omega + mode.gamma);
  mode.omega_d = product > 0.0 ? std::sqrt(product) : std::numeric_limits<double>::quiet_NaN();
}

namespace {

constexpr double kPi = std::numbers::pi;

bool by_frequency(const TransverseMode& a, const TransverseMode& b) {
  if (a.omega != b.omega) return a.omega < b.omega;
  return a.index < b.index;
}

}  // namespace

std::vector<TransverseMode> enumerate_transverse(const ModelSpec& spec,
                                                 const BasisRequest& request) {
  std::vector<TransverseMode> modes;
  const double lx = spec.geometry.lx;
  if (spec.kind == ModelKind::kString) {
    modes.reserve(request.modes_x);
    for (int m = 1; m <= request.modes_x; ++m) {
      const double k = m * kPi / lx;
      TransverseMode mode;
      mode.index = {m, 0};
      mode.lambda = k * k;
      mode.norm_sq = lx / 2.0;
      modes.push_back(mode);
    }
    return modes;
  }
  const double ly = spec.geometry.ly.value_or(0.0);
  modes.reserve(static_cast<std::size_t>(request.modes_x) * request.modes_y);
  for (int m = 1; m <= request.modes_x; ++m) {
    for (int n = 1; n <= request.modes_y; ++n) {
      const double kx = m * kPi / lx;
      const double ky = n * kPi / ly;
      TransverseMode mode;
      mode.index = {m, n};
      mode.lambda = kx * kx + ky * ky;
      mode.norm_sq = lx * ly / 4.0;
      modes.push_back(mode);
    }
  }
  return modes;
}

std::vector<InPlaneMode> enumerate_inplane(double lx, double ly, const BasisRequest& request) {
  std::vector<InPlaneMode> modes;
  for (int m = 1; m <= request.inplane_x; ++m) {
    for (int n = 1; n <= request.inplane_y; ++n) {
      const double kx = m * kPi / lx;
      const double ky = n * kPi / ly;
      const double lambda = kx * kx + ky * ky;
      modes.push_back({{m, n}, lambda * lambda, lx * ly / 4.0});
    }
  }
  std::sort(modes.begin(), modes.end(), [](const InPlaneMode& a, const InPlaneMode& b) {
    if (a.zeta4 != b.zeta4) return a.zeta4 < b.zeta4;
    return a.index < b.index;
  });
  if (request.max_inplane > 0 && modes.size() > static_cast<std::size_t>(request.max_inplane)) {
    modes.resize(request.max_inplane);
  }
  return modes;
}

TruncationResult truncate_stable(std::vector<TransverseMode> candidates, double sample_rate,
                                 int max_modes) {
  TruncationResult result;
  result.report.candidates = candidates.size();
  const double nyquist = kPi * sample_rate;
  for (auto& mode : candidates) {
    if (!(mode.omega * mode.omega > mode.gamma * mode.gamma) || !std::isfinite(mode.omega_d)) {
      ++result.report.rejected_overdamped;
    } else if (!(mode.omega_d < nyquist)) {
      ++result.report.rejected_nyquist;
    } else {
      result.retained.push_back(mode);
    }
  }
  std::sort(result.retained.begin(), result.retained.end(), by_frequency);
  if (max_modes > 0 && result.retained.size() > static_cast<std::size_t>(max_modes)) {
    result.report.rejected_cap = result.retained.size() - max_modes;
    result.retained.resize(max_modes);
  }
  result.report.retained = result.retained.size();
  return result;
}

ModalBasis build_basis(const ModelSpec& spec, const BasisRequest& request, double sample_rate) {
  if (request.modes_x < 1 || (is_two_dimensional(spec.kind) && request.modes_y < 1)) {
    throw Error(ErrorCode::kBasis, "mode counts must be >= 1");
  }
  const ModalPhysics physics = modal_physics(spec, derive_constants(spec));
  auto candidates = enumerate_transverse(spec, request);
  for (auto& mode : candidates) tune_mode(mode, physics);
  auto truncated = truncate_stable(std::move(candidates), sample_rate, request.max_modes);
  if (truncated.retained.empty()) throw Error(ErrorCode::kBasis, "all modes rejected");

  ModalBasis basis;
  basis.kind = spec.kind;
  basis.lx = spec.geometry.lx;
  basis.ly = is_two_dimensional(spec.kind) ? spec.geometry.ly.value_or(0.0) : 0.0;
  basis.transverse = std::move(truncated.retained);
  basis.report = truncated.report;
  if (spec.kind == ModelKind::kVonKarman) {
    if (request.inplane_x < 1 || request.inplane_y < 1) {
      throw Error(ErrorCode::kBasis, "vk requires inplane_x and inplane_y >= 1");
    }
    basis.inplane = enumerate_inplane(basis.lx, basis.ly, request);
  }
  return basis;
}

void check_in_domain(ModelKind kind, double lx, double ly, std::span<const double> point) {
  const std::size_t dims = is_two_dimensional(kind) ? 2 : 1;
  if (point.size() != dims) {
    throw Error(ErrorCode::kBasis, "point has " + std::to_string(point.size()) +
                                       " coordinates, expected " + std::to_string(dims));
  }
  const bool inside_x = point[0] >= 0.0 && point[0] <= lx;
  const bool inside_y = dims == 1 || (point[1] >= 0.0 && point[1] <= ly);
  if (!inside_x || !inside_y) throw Error(ErrorCode::kBasis, "point outside domain");
}

double sine_shape(const ModeIndex& mode, double lx, double ly, std::span<const double> point) {
  const double sx = sin_pi(mode.m * (point[0] / lx));
  if (mode.n == 0) return sx;
  return sx * sin_pi(mode.n * (point[1] / ly));
}

double eval_shape(const ModalBasis& basis, const ModeIndex& mode, std::span<const double> point) {
  if (basis.custom) throw Error(ErrorCode::kBasis, "custom basis has no analytic shapes");
  check_in_domain(basis.kind, basis.lx, basis.ly, point);
  return sine_shape(mode, basis.lx, basis.ly, point);
}

}  // namespace nlm
