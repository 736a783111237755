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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "nlm/coupling.hpp"
#include "nlm/modal_basis.hpp"

namespace nlm {

/// Per-mode coefficients of the impulse-invariant two-pole:
///   q[n+1] = a1 q[n] - a2 q[n-1] + b1 F[n]
/// a1 = 2 exp(-gamma T) cos(omega_d T), a2 = exp(-2 gamma T),
/// b1 = exp(-gamma T) sin(omega_d T) / omega_d.
/// F is already divided by the line/areal density.
struct UpdateCoeffs {
  Eigen::ArrayXd a1;
  Eigen::ArrayXd a2;
  Eigen::ArrayXd b1;
  double period = 0.0;
};

struct ModalState {
  Eigen::ArrayXd current;
  Eigen::ArrayXd previous;
  std::int64_t sample_index = 0;

  static ModalState zeros(std::size_t modes) {
    return {Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(modes)),
            Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(modes)), 0};
  }
};

UpdateCoeffs compute_coeffs(const ModalBasis& basis, double sample_rate);

/// One-sample advance. `force` is f_ext/rho - f_nl in modal coordinates.
void step(ModalState& state, const UpdateCoeffs& coeffs, const Eigen::ArrayXd& force);

/// Factorized von Karman modal force,
///   f_s = gain * sum_n g_n h_ns / (zeta4_n |Psi_n|^2),
///   h_ns = sum_p H[n][s][p] qt_p,  g_n = sum_s qt_s h_ns,  qt = q / |Phi|^2,
/// at O(N M^2) per sample. Transverse modes are grouped by the zero pattern of
/// H (parity classes for sine bases) and only the non-zero blocks are kept,
/// stacked per column class so that h costs one matrix-vector product per
/// class. The grouping depends only on the tensor values and
/// mode order, so identical tensors give bit-identical forces.
class PlateForceKernel {
 public:
  PlateForceKernel(const CouplingTensor& tensor, const Eigen::ArrayXd& norm_sq, double gain);

  void evaluate(const Eigen::ArrayXd& q, Eigen::ArrayXd& out) const;

  std::size_t transverse() const { return permutation_.size(); }
  std::size_t inplane() const { return scale_.size(); }
  std::size_t classes() const { return class_count_; }
  /// Stored tensor coefficients (multiply-adds per sample for h).
  std::size_t stored_entries() const { return stored_; }

 private:
  using ColMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  // Rows [row, row + rows) of a column class's stacked matrix hold the block
  // H_n restricted to (row class, column class).
  struct Segment {
    Eigen::Index inplane;
    Eigen::Index row;
    Eigen::Index rows;
    Eigen::Index target;  // first permuted transverse slot of the row class
    bool first;           // first write to this part of h in a pass: copy, not add
  };

  struct ColumnClass {
    Eigen::Index offset = 0;
    Eigen::Index size = 0;
    ColMatrix stacked;
    std::vector<Segment> segments;
  };

  std::vector<std::size_t> permutation_;  // permuted slot -> mode index
  Eigen::VectorXd inv_norm_sq_;           // in permuted order
  Eigen::VectorXd scale_;                 // gain / (zeta4 |Psi|^2), per in-plane mode
  std::vector<ColumnClass> columns_;
  std::size_t stored_ = 0;
  std::size_t class_count_ = 0;
  // Scratch buffers; evaluate() is not re-entrant on one kernel.
  mutable Eigen::VectorXd x_;
  mutable RowMatrix h_;  // (N, M): h_n in permuted order
  mutable Eigen::VectorXd t_;
  mutable Eigen::VectorXd g_;
  mutable Eigen::VectorXd acc_;
};

struct NonlinearConfig {
  bool enabled = false;
  ModelKind kind = ModelKind::kString;
  /// EA/(2 L rho), Eh/(2 Lx Ly (1-nu^2) rho) or E/(2 rho_m), by kind.
  double gain = 0.0;
  Eigen::ArrayXd lambda;
  Eigen::ArrayXd norm_sq;
  std::optional<PlateForceKernel> plate;  // vk only; owned so copies share no scratch
};

NonlinearConfig make_nonlinear_config(const ModalBasis& basis, double gain, bool enabled,
                                      const CouplingTensor* coupling);

/// f_mu = lambda_mu q_mu * gain * sum_nu lambda_nu q_nu^2 / |Phi_nu|^2.
void nl_force_string(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out);
/// Same law as the string with the membrane gain.
void nl_force_membrane(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out);
void nl_force_plate(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out);

/// Dispatches on cfg.kind; writes zeros when disabled.
void nl_force(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out);

}  // namespace nlm
