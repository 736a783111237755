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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "nlm/error.hpp"
#include "nlm/modal_basis.hpp"
#include "nlm/quadrature.hpp"
#include "oracles.hpp"

namespace nlm {
namespace {

constexpr double kPi = std::numbers::pi;

ModelSpec string_spec(double tension = 100.0) {
  ModelSpec spec;
  spec.kind = ModelKind::kString;
  spec.material = {200e9, 7850.0, std::nullopt};
  spec.geometry.lx = 1.0;
  spec.geometry.cross_sectional_area = 1e-6;
  spec.geometry.moment_of_inertia = 7.9577e-14;
  spec.damping.tension = tension;
  return spec;
}

ModelSpec plate_spec(double lx, double ly) {
  ModelSpec spec;
  spec.kind = ModelKind::kVonKarman;
  spec.material = {200e9, 7850.0, 0.3};
  spec.geometry.lx = lx;
  spec.geometry.ly = ly;
  spec.geometry.thickness = 1e-3;
  spec.damping.f_independent_loss = 1.0;
  return spec;
}

TEST(BuildBasis, StringFundamental) {
  const ModalBasis basis = build_basis(string_spec(), {3, 1, 0, 0, 0, 0}, 44100.0);
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_NEAR(basis.transverse[0].lambda, kPi * kPi, 1e-12);
  EXPECT_NEAR(basis.transverse[0].lambda, 9.8696, 1e-4);
  EXPECT_DOUBLE_EQ(basis.transverse[0].norm_sq, 0.5);
  EXPECT_NEAR(basis.transverse[0].omega / (2.0 * kPi), 56.5, 0.05);
}

TEST(BuildBasis, SquarePlateFirstMode) {
  const ModalBasis basis = build_basis(plate_spec(1.0, 1.0), {2, 2, 0, 2, 2, 0}, 44100.0);
  EXPECT_EQ(basis.transverse[0].index, (ModeIndex{1, 1}));
  EXPECT_NEAR(basis.transverse[0].lambda, 2.0 * kPi * kPi, 1e-12);
  EXPECT_DOUBLE_EQ(basis.transverse[0].norm_sq, 0.25);
  ASSERT_EQ(basis.inplane.size(), 4u);
  EXPECT_NEAR(basis.inplane[0].zeta4, 4.0 * std::pow(kPi, 4), 1e-9);
}

TEST(BuildBasis, SortedByFrequencyThenIndex) {
  // Square plate: (1,2) and (2,1) are degenerate and must tie-break by index.
  const ModalBasis basis = build_basis(plate_spec(1.0, 1.0), {4, 4, 0, 1, 1, 0}, 44100.0);
  for (std::size_t k = 1; k < basis.size(); ++k) {
    const auto& a = basis.transverse[k - 1];
    const auto& b = basis.transverse[k];
    EXPECT_TRUE(a.omega < b.omega || (a.omega == b.omega && a.index < b.index));
  }
  EXPECT_EQ(basis.transverse[1].index, (ModeIndex{1, 2}));
  EXPECT_EQ(basis.transverse[2].index, (ModeIndex{2, 1}));
}

TEST(BuildBasis, RebuildIsIdentical) {
  const auto a = build_basis(plate_spec(0.6, 0.5), {7, 5, 20, 2, 2, 0}, 44100.0);
  const auto b = build_basis(plate_spec(0.6, 0.5), {7, 5, 20, 2, 2, 0}, 44100.0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a.transverse[k].index, b.transverse[k].index);
    EXPECT_EQ(a.transverse[k].omega, b.transverse[k].omega);
  }
}

TEST(BuildBasis, AllRejectedIsAnError) {
  ModelSpec spec = string_spec();
  spec.damping.f_independent_loss = 1e6;
  try {
    build_basis(spec, {3, 1, 0, 0, 0, 0}, 44100.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBasis);
    EXPECT_STREQ(e.what(), "all modes rejected");
  }
}

TEST(TuneMode, DampedFrequency) {
  TransverseMode mode;
  mode.lambda = 10.0;
  tune_mode(mode, {0.5, 0.01, 20.0, 0.3, 1e-3});
  const double omega = oracle::modal_omega(0.5, 20.0, 0.01, 10.0);
  EXPECT_NEAR(mode.omega, omega, 1e-12 * omega);
  EXPECT_NEAR(mode.gamma, (0.3 + 1e-3 * 10.0) / 0.02, 1e-12);
  EXPECT_NEAR(mode.omega_d, std::sqrt(omega * omega - mode.gamma * mode.gamma), 1e-9);
}

TEST(TruncateStable, SpecExamples) {
  auto make = [](double omega, double gamma) {
    TransverseMode mode;
    mode.lambda = 1.0;
    mode.omega = omega;
    mode.gamma = gamma;
    const double p = (omega - gamma) * (omega + gamma);
    mode.omega_d = p > 0.0 ? std::sqrt(p) : std::nan("");
    return mode;
  };
  std::vector<TransverseMode> candidates = {make(2.0 * kPi * 30000.0, 0.0), make(100.0, 200.0),
                                            make(2.0 * kPi * 440.0, 0.0)};
  candidates[1].index = {2, 0};
  candidates[2].index = {3, 0};
  const auto result = truncate_stable(candidates, 44100.0);
  ASSERT_EQ(result.retained.size(), 1u);
  EXPECT_EQ(result.retained[0].index, (ModeIndex{3, 0}));
  EXPECT_EQ(result.report.rejected_nyquist, 1u);
  EXPECT_EQ(result.report.rejected_overdamped, 1u);
  EXPECT_EQ(result.report.retained, 1u);
}

TEST(TruncateStable, CapKeepsLowest) {
  const auto basis = build_basis(string_spec(), {10, 1, 4, 0, 0, 0}, 44100.0);
  ASSERT_EQ(basis.size(), 4u);
  EXPECT_EQ(basis.report.rejected_cap, 6u);
  EXPECT_EQ(basis.transverse.back().index, (ModeIndex{4, 0}));
}

TEST(Shapes, NodesAndAntinodes) {
  const auto string = build_basis(string_spec(), {2, 1, 0, 0, 0, 0}, 44100.0);
  const std::vector<double> mid = {0.5};
  EXPECT_EQ(eval_shape(string, {2, 0}, mid), 0.0);
  EXPECT_EQ(eval_shape(string, {1, 0}, mid), 1.0);
  EXPECT_EQ(eval_shape(string, {1, 0}, std::vector<double>{1.0}), 0.0);

  const auto plate = build_basis(plate_spec(0.6, 0.5), {2, 2, 0, 1, 1, 0}, 44100.0);
  EXPECT_EQ(eval_shape(plate, {1, 1}, std::vector<double>{0.3, 0.25}), 1.0);
  EXPECT_EQ(eval_shape(plate, {2, 1}, std::vector<double>{0.3, 0.25}), 0.0);
  EXPECT_EQ(eval_shape(plate, {2, 2}, std::vector<double>{0.6, 0.1}), 0.0);
}

TEST(Shapes, OutsideDomain) {
  const auto plate = build_basis(plate_spec(0.6, 0.5), {2, 2, 0, 1, 1, 0}, 44100.0);
  EXPECT_THROW(eval_shape(plate, {1, 1}, std::vector<double>{0.7, 0.1}), Error);
  EXPECT_THROW(eval_shape(plate, {1, 1}, std::vector<double>{0.1}), Error);
}

TEST(SinPi, ExactAtSpecialPoints) {
  for (int k = -6; k <= 6; ++k) {
    EXPECT_EQ(sin_pi(k), 0.0);
    EXPECT_EQ(std::fabs(sin_pi(k + 0.5)), 1.0);
    EXPECT_EQ(std::fabs(cos_pi(k)), 1.0);
    EXPECT_EQ(cos_pi(k + 0.5), 0.0);
  }
  for (double t : {0.1, 0.37, 1.9, -2.3, 7.77}) {
    EXPECT_NEAR(sin_pi(t), std::sin(kPi * t), 1e-14);
    EXPECT_NEAR(cos_pi(t), std::cos(kPi * t), 1e-14);
  }
}

// Basis identities checked by tensor Gauss-Legendre quadrature.
TEST(Shapes, NormsOrthogonalityAndEigenResidual) {
  const double lx = 0.6, ly = 0.5;
  const auto basis = build_basis(plate_spec(lx, ly), {5, 5, 0, 1, 1, 0}, 44100.0);
  const auto qx = gauss_legendre(24, 0.0, lx);
  const auto qy = gauss_legendre(24, 0.0, ly);
  const std::size_t m = basis.size();
  std::vector<double> gram(m * m, 0.0);
  std::vector<double> residual(m, 0.0);
  for (std::size_t i = 0; i < qx.nodes.size(); ++i) {
    for (std::size_t j = 0; j < qy.nodes.size(); ++j) {
      const double w = qx.weights[i] * qy.weights[j];
      const double x = qx.nodes[i], y = qy.nodes[j];
      for (std::size_t a = 0; a < m; ++a) {
        const auto& ma = basis.transverse[a];
        const double fa = std::sin(ma.index.m * kPi * x / lx) * std::sin(ma.index.n * kPi * y / ly);
        const double kx = ma.index.m * kPi / lx, ky = ma.index.n * kPi / ly;
        const double laplacian = -(kx * kx + ky * ky) * fa;
        residual[a] += w * std::pow(laplacian + ma.lambda * fa, 2);
        for (std::size_t b = 0; b < m; ++b) {
          const auto& mb = basis.transverse[b];
          const double fb = eval_shape(basis, mb.index, std::vector<double>{x, y});
          gram[a * m + b] += w * fa * fb;
        }
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    const double na = basis.transverse[a].norm_sq;
    EXPECT_NEAR(gram[a * m + a], na, 1e-10 * na);
    EXPECT_LT(residual[a], 1e-8);
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b) EXPECT_LT(std::fabs(gram[a * m + b]), 1e-10 * std::sqrt(na * basis.transverse[b].norm_sq));
    }
  }
}

TEST(Inplane, SortedAndCapped) {
  const auto modes = enumerate_inplane(0.6, 0.5, {1, 1, 0, 5, 5, 7});
  ASSERT_EQ(modes.size(), 7u);
  for (std::size_t k = 1; k < modes.size(); ++k) EXPECT_LE(modes[k - 1].zeta4, modes[k].zeta4);
  EXPECT_EQ(modes[0].index, (ModeIndex{1, 1}));
}

}  // namespace
}  // namespace nlm
