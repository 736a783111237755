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
#include <vector>

#include "nlm/modal_basis.hpp"

namespace nlm {

/// Projection of the von Karman bilinear operator onto the in-plane modes:
///   H[n][q][r] = <Psi_n, L(Phi_q, Phi_r)>
/// with raw (un-normalized) shapes. Dense, row-major over (n, q, r).
struct CouplingTensor {
  std::size_t inplane = 0;     // N
  std::size_t transverse = 0;  // M
  std::vector<double> data;
  std::vector<double> zeta4;            // length N
  std::vector<double> inplane_norm_sq;  // length N

  double at(std::size_t n, std::size_t q, std::size_t r) const {
    return data[(n * transverse + q) * transverse + r];
  }
  double& at(std::size_t n, std::size_t q, std::size_t r) {
    return data[(n * transverse + q) * transverse + r];
  }

  /// Dimensions agree with each other and with the data length.
  bool consistent() const;
  /// Exact symmetry in the last two indices.
  bool symmetric() const;
};

/// Second derivatives of a mode shape at a point.
struct SecondDerivatives {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;
};

/// L(f, g) = f_xx g_yy + f_yy g_xx - 2 f_xy g_xy.
double vk_bilinear(const SecondDerivatives& f, const SecondDerivatives& g);

/// Closed-form second derivatives of sin(m pi x/Lx) sin(n pi y/Ly).
SecondDerivatives sine_second_derivatives(const ModeIndex& mode, double lx, double ly, double x,
                                          double y);

/// L(Phi_f, Phi_g) at (x, y) for two sine modes.
double vk_operator(const ModeIndex& f, const ModeIndex& g, double lx, double ly, double x,
                   double y);

/// ceil(0.9 K) + 16 points per axis, K being the largest half-wave count of
/// the integrand along one axis (in-plane index + twice the transverse index).
int default_quadrature_order(const ModalBasis& basis);

/// Number of worker threads for preparation: NLM_THREADS if set and positive,
/// otherwise the hardware concurrency.
int preparation_threads();

/// Tensor-product Gauss-Legendre evaluation of H with `order` points per
/// axis, computed for q <= r and mirrored (the integrand is bitwise symmetric,
/// so this equals the symmetrized result). Entries below 1e-12 * max|H| are
/// flushed to zero. No convergence check. Results do not depend on `threads`.
CouplingTensor integrate_coupling(const ModalBasis& basis, int order, int threads);

/// integrate_coupling at `order` (0 = default_quadrature_order), verified
/// against order + 8: throws Error(kCoupling, "quadrature order too low")
/// when max|dH| exceeds 1e-8 * max|H|.
CouplingTensor compute_H(const ModalBasis& basis, int order = 0, int threads = 0);

/// Restricts a tensor to the transverse modes `keep` (indices into its
/// current transverse ordering), preserving the in-plane set.
CouplingTensor slice_transverse(const CouplingTensor& tensor, const std::vector<std::size_t>& keep);

}  // namespace nlm
