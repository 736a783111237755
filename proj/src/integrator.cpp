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

#include "nlm/integrator.hpp"

#include <cmath>
#include <cstring>
#include <map>

#include "nlm/error.hpp"

namespace nlm {

UpdateCoeffs compute_coeffs(const ModalBasis& basis, double sample_rate) {
  const auto modes = static_cast<Eigen::Index>(basis.size());
  UpdateCoeffs coeffs;
  coeffs.period = 1.0 / sample_rate;
  coeffs.a1.resize(modes);
  coeffs.a2.resize(modes);
  coeffs.b1.resize(modes);
  const double period = coeffs.period;
  for (Eigen::Index k = 0; k < modes; ++k) {
    const TransverseMode& mode = basis.transverse[k];
    const double decay = std::exp(-mode.gamma * period);
    const double phase = mode.omega_d * period;
    coeffs.a1[k] = 2.0 * decay * std::cos(phase);
    coeffs.a2[k] = std::exp(-2.0 * mode.gamma * period);
    coeffs.b1[k] = decay * std::sin(phase) / mode.omega_d;
  }
  return coeffs;
}

void step(ModalState& state, const UpdateCoeffs& coeffs, const Eigen::ArrayXd& force) {
  // Coefficient-wise, so writing q[n+1] over q[n-1] in place is alias-safe.
  state.previous = coeffs.a1 * state.current - coeffs.a2 * state.previous + coeffs.b1 * force;
  state.previous.swap(state.current);
  ++state.sample_index;
}

namespace {

constexpr Eigen::Index kTile = 32;

// y = A x for a column-major A whose row count is a multiple of kTile. One
// tile of 32 rows stays in registers while the columns stream past, which
// roughly doubles Eigen's throughput for these tall, narrow blocks.
typedef double Lanes __attribute__((vector_size(64)));

void tall_gemv(const double* __restrict a, Eigen::Index rows, Eigen::Index cols,
               const double* __restrict x, double* __restrict y) {
  for (Eigen::Index r0 = 0; r0 < rows; r0 += kTile) {
    Lanes acc0 = {}, acc1 = {}, acc2 = {}, acc3 = {};
    const double* col = a + r0;
    for (Eigen::Index j = 0; j < cols; ++j, col += rows) {
      Lanes c0, c1, c2, c3;
      std::memcpy(&c0, col, sizeof c0);
      std::memcpy(&c1, col + 8, sizeof c1);
      std::memcpy(&c2, col + 16, sizeof c2);
      std::memcpy(&c3, col + 24, sizeof c3);
      const double xj = x[j];
      acc0 += c0 * xj;
      acc1 += c1 * xj;
      acc2 += c2 * xj;
      acc3 += c3 * xj;
    }
    std::memcpy(y + r0, &acc0, sizeof acc0);
    std::memcpy(y + r0 + 8, &acc1, sizeof acc1);
    std::memcpy(y + r0 + 16, &acc2, sizeof acc2);
    std::memcpy(y + r0 + 24, &acc3, sizeof acc3);
  }
}

}  // namespace

PlateForceKernel::PlateForceKernel(const CouplingTensor& tensor, const Eigen::ArrayXd& norm_sq,
                                   double gain) {
  if (!tensor.consistent() || tensor.transverse != static_cast<std::size_t>(norm_sq.size())) {
    throw Error(ErrorCode::kCoupling, "tensor/basis dimension mismatch");
  }
  const std::size_t modes = tensor.transverse;
  const std::size_t inplane = tensor.inplane;

  // Columns with identical zero patterns over all (n, q) share a class.
  std::vector<std::size_t> class_of(modes, 0);
  std::map<std::vector<bool>, std::size_t> patterns;
  for (std::size_t r = 0; r < modes; ++r) {
    std::vector<bool> pattern(inplane * modes);
    for (std::size_t n = 0; n < inplane; ++n) {
      for (std::size_t q = 0; q < modes; ++q) pattern[n * modes + q] = tensor.at(n, q, r) != 0.0;
    }
    auto [it, inserted] = patterns.emplace(std::move(pattern), patterns.size());
    class_of[r] = it->second;
  }
  class_count_ = patterns.size();
  constexpr std::size_t kMaxClasses = 16;
  if (class_count_ > kMaxClasses) {
    std::fill(class_of.begin(), class_of.end(), 0);
    class_count_ = 1;
  }

  std::vector<Eigen::Index> class_offset(class_count_ + 1, 0);
  std::vector<Eigen::Index> class_size(class_count_, 0);
  for (std::size_t r = 0; r < modes; ++r) ++class_size[class_of[r]];
  for (std::size_t c = 0; c < class_count_; ++c) class_offset[c + 1] = class_offset[c] + class_size[c];
  for (std::size_t c = 0; c < class_count_; ++c) {
    for (std::size_t r = 0; r < modes; ++r) {
      if (class_of[r] == c) permutation_.push_back(r);
    }
  }

  inv_norm_sq_.resize(static_cast<Eigen::Index>(modes));
  for (std::size_t k = 0; k < modes; ++k) inv_norm_sq_[k] = 1.0 / norm_sq[permutation_[k]];
  scale_.resize(static_cast<Eigen::Index>(inplane));
  for (std::size_t n = 0; n < inplane; ++n) {
    scale_[n] = gain / (tensor.zeta4[n] * tensor.inplane_norm_sq[n]);
  }

  const auto block_nonzero = [&](std::size_t n, std::size_t a, std::size_t b) {
    for (Eigen::Index i = class_offset[a]; i < class_offset[a + 1]; ++i) {
      for (Eigen::Index j = class_offset[b]; j < class_offset[b + 1]; ++j) {
        if (tensor.at(n, permutation_[i], permutation_[j]) != 0.0) return true;
      }
    }
    return false;
  };
  std::vector<bool> written(inplane * class_count_, false);
  for (std::size_t b = 0; b < class_count_; ++b) {
    ColumnClass column;
    column.offset = class_offset[b];
    column.size = class_size[b];
    Eigen::Index rows = 0;
    for (std::size_t n = 0; n < inplane; ++n) {
      for (std::size_t a = 0; a < class_count_; ++a) {
        if (!block_nonzero(n, a, b)) continue;
        const bool first = !written[n * class_count_ + a];
        written[n * class_count_ + a] = true;
        column.segments.push_back({static_cast<Eigen::Index>(n), rows, class_size[a], class_offset[a], first});
        rows += class_size[a];
      }
    }
    stored_ += static_cast<std::size_t>(rows * column.size);
    rows = (rows + kTile - 1) / kTile * kTile;
    column.stacked.setZero(rows, column.size);
    for (const Segment& seg : column.segments) {
      for (Eigen::Index i = 0; i < seg.rows; ++i) {
        for (Eigen::Index j = 0; j < column.size; ++j) {
          column.stacked(seg.row + i, j) = tensor.at(static_cast<std::size_t>(seg.inplane),
                                                     permutation_[seg.target + i],
                                                     permutation_[column.offset + j]);
        }
      }
    }
    t_.resize(std::max(t_.size(), rows));
    columns_.push_back(std::move(column));
  }

  x_.resize(static_cast<Eigen::Index>(modes));
  // Parts of h that no block writes stay zero for good.
  h_.setZero(static_cast<Eigen::Index>(inplane), static_cast<Eigen::Index>(modes));
  g_.resize(static_cast<Eigen::Index>(inplane));
  acc_.resize(static_cast<Eigen::Index>(modes));
}

void PlateForceKernel::evaluate(const Eigen::ArrayXd& q, Eigen::ArrayXd& out) const {
  const std::size_t modes = permutation_.size();
  for (std::size_t k = 0; k < modes; ++k) x_[k] = q[permutation_[k]] * inv_norm_sq_[k];
  for (const ColumnClass& column : columns_) {
    tall_gemv(column.stacked.data(), column.stacked.rows(), column.size, x_.data() + column.offset,
              t_.data());
    for (const Segment& seg : column.segments) {
      double* target = h_.data() + seg.inplane * h_.cols() + seg.target;
      const double* source = t_.data() + seg.row;
      if (seg.first) {
        for (Eigen::Index i = 0; i < seg.rows; ++i) target[i] = source[i];
      } else {
        for (Eigen::Index i = 0; i < seg.rows; ++i) target[i] += source[i];
      }
    }
  }
  g_.noalias() = h_ * x_;
  g_.array() *= scale_.array();
  acc_.noalias() = h_.transpose() * g_;
  out.resize(static_cast<Eigen::Index>(modes));
  for (std::size_t k = 0; k < modes; ++k) out[permutation_[k]] = acc_[k];
}

NonlinearConfig make_nonlinear_config(const ModalBasis& basis, double gain, bool enabled,
                                      const CouplingTensor* coupling) {
  NonlinearConfig cfg;
  cfg.enabled = enabled;
  cfg.kind = basis.kind;
  cfg.gain = gain;
  const auto modes = static_cast<Eigen::Index>(basis.size());
  cfg.lambda.resize(modes);
  cfg.norm_sq.resize(modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    cfg.lambda[k] = basis.transverse[k].lambda;
    cfg.norm_sq[k] = basis.transverse[k].norm_sq;
  }
  if (basis.kind == ModelKind::kVonKarman) {
    if (coupling == nullptr) throw Error(ErrorCode::kCoupling, "vk requires a coupling tensor");
    cfg.plate.emplace(*coupling, cfg.norm_sq, gain);
  }
  return cfg;
}

namespace {

void tension_force(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out) {
  const Eigen::ArrayXd& q = state.current;
  const double stretch = (cfg.lambda * q.square() / cfg.norm_sq).sum();
  out = (cfg.gain * stretch) * (cfg.lambda * q);
}

}  // namespace

void nl_force_string(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out) {
  tension_force(state, cfg, out);
}

void nl_force_membrane(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out) {
  tension_force(state, cfg, out);
}

void nl_force_plate(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out) {
  if (!cfg.plate || cfg.plate->transverse() != static_cast<std::size_t>(state.current.size())) {
    throw Error(ErrorCode::kCoupling, "tensor/basis dimension mismatch");
  }
  cfg.plate->evaluate(state.current, out);
}

void nl_force(const ModalState& state, const NonlinearConfig& cfg, Eigen::ArrayXd& out) {
  if (!cfg.enabled) {
    out.setZero(state.current.size());
    return;
  }
  switch (cfg.kind) {
    case ModelKind::kString:
      nl_force_string(state, cfg, out);
      break;
    case ModelKind::kBerger:
      nl_force_membrane(state, cfg, out);
      break;
    case ModelKind::kVonKarman:
      nl_force_plate(state, cfg, out);
      break;
  }
}

}  // namespace nlm
