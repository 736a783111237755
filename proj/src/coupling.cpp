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

#include "nlm/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include <Eigen/Dense>

#include "nlm/error.hpp"
#include "nlm/quadrature.hpp"

namespace nlm {

bool CouplingTensor::consistent() const {
  return zeta4.size() == inplane && inplane_norm_sq.size() == inplane &&
         data.size() == inplane * transverse * transverse;
}

bool CouplingTensor::symmetric() const {
  for (std::size_t n = 0; n < inplane; ++n) {
    for (std::size_t q = 0; q < transverse; ++q) {
      for (std::size_t r = q + 1; r < transverse; ++r) {
        if (at(n, q, r) != at(n, r, q)) return false;
      }
    }
  }
  return true;
}

// coupling.cpp is built without FMA contraction, which would otherwise fuse
// the two cross products in an order-dependent way and break L(f, g) == L(g, f).
double vk_bilinear(const SecondDerivatives& f, const SecondDerivatives& g) {
  return f.xx * g.yy + f.yy * g.xx - 2.0 * f.xy * g.xy;
}

SecondDerivatives sine_second_derivatives(const ModeIndex& mode, double lx, double ly, double x,
                                          double y) {
  const double kx = mode.m * std::numbers::pi / lx;
  const double ky = mode.n * std::numbers::pi / ly;
  const double sx = sin_pi(mode.m * (x / lx));
  const double sy = sin_pi(mode.n * (y / ly));
  const double cx = cos_pi(mode.m * (x / lx));
  const double cy = cos_pi(mode.n * (y / ly));
  return {-kx * kx * sx * sy, -ky * ky * sx * sy, kx * ky * cx * cy};
}

double vk_operator(const ModeIndex& f, const ModeIndex& g, double lx, double ly, double x,
                   double y) {
  return vk_bilinear(sine_second_derivatives(f, lx, ly, x, y),
                     sine_second_derivatives(g, lx, ly, x, y));
}

int default_quadrature_order(const ModalBasis& basis) {
  int tm = 1, tn = 1, im = 1, in = 1;
  for (const auto& mode : basis.transverse) tm = std::max(tm, mode.index.m), tn = std::max(tn, mode.index.n);
  for (const auto& mode : basis.inplane) im = std::max(im, mode.index.m), in = std::max(in, mode.index.n);
  // Highest half-wave count of the integrand along either axis. Gauss-Legendre
  // needs about 0.9 points per half-wave plus a fixed margin to reach ~1e-13.
  const int waves = std::max(im + 2 * tm, in + 2 * tn);
  return static_cast<int>(std::ceil(0.9 * waves)) + 16;
}

int preparation_threads() {
  if (const char* env = std::getenv("NLM_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_analytic_vk(const ModalBasis& basis) {
  if (basis.kind != ModelKind::kVonKarman) {
    throw Error(ErrorCode::kCoupling, "coupling tensor requires a vk basis");
  }
  if (basis.custom) throw Error(ErrorCode::kCoupling, "custom basis has no analytic shapes");
  if (basis.inplane.empty()) throw Error(ErrorCode::kCoupling, "vk basis has no in-plane modes");
}

}  // namespace

CouplingTensor integrate_coupling(const ModalBasis& basis, int order, int threads) {
  require_analytic_vk(basis);
  if (order < 1) throw Error(ErrorCode::kCoupling, "quadrature order must be >= 1");
  const std::size_t num_t = basis.transverse.size();
  const std::size_t num_i = basis.inplane.size();
  const std::size_t points = static_cast<std::size_t>(order);
  const QuadratureRule rx = gauss_legendre(order, 0.0, basis.lx);
  const QuadratureRule ry = gauss_legendre(order, 0.0, basis.ly);

  // Second derivatives of every transverse mode on the grid, row-major (i, j).
  std::vector<std::vector<SecondDerivatives>> derivs(num_t);
  for (std::size_t t = 0; t < num_t; ++t) {
    derivs[t].resize(points * points);
    for (std::size_t i = 0; i < points; ++i) {
      for (std::size_t j = 0; j < points; ++j) {
        derivs[t][i * points + j] = sine_second_derivatives(
            basis.transverse[t].index, basis.lx, basis.ly, rx.nodes[i], ry.nodes[j]);
      }
    }
  }

  // In-plane shapes are separable; tabulate the distinct 1-D factors.
  int max_m = 1;
  int max_n = 1;
  for (const auto& mode : basis.inplane) {
    max_m = std::max(max_m, mode.index.m);
    max_n = std::max(max_n, mode.index.n);
  }
  RowMatrix sx(points, max_m);
  RowMatrix sy(points, max_n);
  for (std::size_t i = 0; i < points; ++i) {
    for (int m = 1; m <= max_m; ++m) sx(i, m - 1) = sin_pi(m * (rx.nodes[i] / basis.lx));
    for (int n = 1; n <= max_n; ++n) sy(i, n - 1) = sin_pi(n * (ry.nodes[i] / basis.ly));
  }
  RowMatrix weights(points, points);
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = 0; j < points; ++j) weights(i, j) = rx.weights[i] * ry.weights[j];
  }

  CouplingTensor tensor;
  tensor.inplane = num_i;
  tensor.transverse = num_t;
  tensor.data.assign(num_i * num_t * num_t, 0.0);
  for (const auto& mode : basis.inplane) {
    tensor.zeta4.push_back(mode.zeta4);
    tensor.inplane_norm_sq.push_back(mode.norm_sq);
  }

  auto worker = [&](std::size_t first_row, std::size_t stride) {
    RowMatrix field(points, points);
    for (std::size_t q = first_row; q < num_t; q += stride) {
      for (std::size_t r = q; r < num_t; ++r) {
        const auto& dq = derivs[q];
        const auto& dr = derivs[r];
        for (std::size_t k = 0; k < points * points; ++k) {
          field.data()[k] = vk_bilinear(dq[k], dr[k]) * weights.data()[k];
        }
        const RowMatrix projected = sx.transpose() * (field * sy);
        for (std::size_t n = 0; n < num_i; ++n) {
          const auto& index = basis.inplane[n].index;
          const double value = projected(index.m - 1, index.n - 1);
          tensor.at(n, q, r) = value;
          tensor.at(n, r, q) = value;
        }
      }
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(threads > 0 ? threads : preparation_threads(), 1, std::max<std::size_t>(num_t, 1));
  if (workers == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker, w, workers);
    for (auto& thread : pool) thread.join();
  }

  double largest = 0.0;
  for (double v : tensor.data) largest = std::max(largest, std::fabs(v));
  const double floor = 1e-12 * largest;
  for (double& v : tensor.data) {
    if (std::fabs(v) < floor) v = 0.0;
  }
  return tensor;
}

CouplingTensor compute_H(const ModalBasis& basis, int order, int threads) {
  const int used = order > 0 ? order : default_quadrature_order(basis);
  CouplingTensor tensor = integrate_coupling(basis, used, threads);
  const CouplingTensor finer = integrate_coupling(basis, used + 8, threads);
  double largest = 0.0;
  double deviation = 0.0;
  for (std::size_t k = 0; k < tensor.data.size(); ++k) {
    largest = std::max(largest, std::fabs(finer.data[k]));
    deviation = std::max(deviation, std::fabs(finer.data[k] - tensor.data[k]));
  }
  if (deviation > 1e-8 * largest) {
    throw Error(ErrorCode::kCoupling,
                "quadrature order too low: order " + std::to_string(used) +
                    " differs from order " + std::to_string(used + 8) + " by " +
                    std::to_string(deviation / largest) + " relative");
  }
  return tensor;
}

CouplingTensor slice_transverse(const CouplingTensor& tensor, const std::vector<std::size_t>& keep) {
  CouplingTensor out;
  out.inplane = tensor.inplane;
  out.transverse = keep.size();
  out.zeta4 = tensor.zeta4;
  out.inplane_norm_sq = tensor.inplane_norm_sq;
  out.data.resize(out.inplane * out.transverse * out.transverse);
  for (std::size_t n = 0; n < out.inplane; ++n) {
    for (std::size_t q = 0; q < keep.size(); ++q) {
      for (std::size_t r = 0; r < keep.size(); ++r) out.at(n, q, r) = tensor.at(n, keep[q], keep[r]);
    }
  }
  return out;
}

}  // namespace nlm
