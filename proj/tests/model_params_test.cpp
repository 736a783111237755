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
#include <string>

#include <gtest/gtest.h>

#include "nlm/error.hpp"
#include "nlm/model_params.hpp"

namespace nlm {
namespace {

ModelSpec steel_string() {
  ModelSpec spec;
  spec.kind = ModelKind::kString;
  spec.material = {200e9, 7850.0, std::nullopt};
  spec.geometry.lx = 1.0;
  spec.geometry.cross_sectional_area = 1e-6;
  spec.geometry.moment_of_inertia = 7.9577e-14;
  spec.damping.tension = 100.0;
  return spec;
}

ModelSpec steel_plate() {
  ModelSpec spec;
  spec.kind = ModelKind::kVonKarman;
  spec.material = {2e11, 7850.0, 0.3};
  spec.geometry.lx = 1.0;
  spec.geometry.ly = 1.0;
  spec.geometry.thickness = 1e-3;
  return spec;
}

std::vector<std::string> problems_of(const ModelSpec& spec) {
  try {
    validate(spec);
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& text) {
  for (const auto& p : problems) {
    if (p.find(text) != std::string::npos) return true;
  }
  return false;
}

TEST(DeriveConstants, StringUsesEIAndRhoA) {
  const auto derived = derive_constants(steel_string());
  EXPECT_NEAR(derived.bending_stiffness, 1.5915e-2, 1e-6);
  EXPECT_NEAR(derived.density, 7.85e-3, 1e-15);
}

TEST(DeriveConstants, PlateRigidity) {
  const auto derived = derive_constants(steel_plate());
  EXPECT_NEAR(derived.bending_stiffness, 2e11 * 1e-9 / (12.0 * 0.91), 1e-9);
  EXPECT_NEAR(derived.bending_stiffness, 18.315, 1e-3);
  // Documented evaluation order, to the bit.
  const double h = 1e-3;
  EXPECT_EQ(derived.bending_stiffness, (2e11 * ((h * h * h) / 12.0)) / (1.0 - 0.3 * 0.3));
}

TEST(DeriveConstants, BergerArealDensity) {
  ModelSpec spec = steel_plate();
  spec.kind = ModelKind::kBerger;
  spec.material.mass_density = 1000.0;
  EXPECT_DOUBLE_EQ(derive_constants(spec).density, 1.0);
}

TEST(DeriveConstants, FlexibleStringHasNoStiffness) {
  ModelSpec spec = steel_string();
  spec.geometry.moment_of_inertia.reset();
  EXPECT_EQ(derive_constants(spec).bending_stiffness, 0.0);
}

TEST(DeriveConstants, IsPure) {
  const auto a = derive_constants(steel_plate());
  const auto b = derive_constants(steel_plate());
  EXPECT_EQ(a.bending_stiffness, b.bending_stiffness);
  EXPECT_EQ(a.density, b.density);
}

TEST(NonlinearGain, MatchesEachForceLaw) {
  const ModelSpec string = steel_string();
  EXPECT_DOUBLE_EQ(nonlinear_gain(string, derive_constants(string)), 200e9 * 1e-6 / (2.0 * 1.0 * 7.85e-3));

  ModelSpec membrane = steel_plate();
  membrane.kind = ModelKind::kBerger;
  membrane.geometry.lx = 0.5;
  const double rho = 7850.0 * 1e-3;
  EXPECT_NEAR(nonlinear_gain(membrane, derive_constants(membrane)),
              2e11 * 1e-3 / (2.0 * 0.5 * 1.0 * 0.91 * rho), 1e-6);

  const ModelSpec plate = steel_plate();
  EXPECT_DOUBLE_EQ(nonlinear_gain(plate, derive_constants(plate)), 2e11 / (2.0 * 7850.0));
}

TEST(Validate, HappyPath) {
  EXPECT_TRUE(validate(steel_string()).empty());
  EXPECT_TRUE(validate(steel_plate()).empty());
}

TEST(Validate, ZeroLengthNamed) {
  ModelSpec spec = steel_string();
  spec.geometry.lx = 0.0;
  EXPECT_TRUE(mentions(problems_of(spec), "geometry: lx must be > 0"));
}

TEST(Validate, PoissonOutOfRange) {
  ModelSpec spec = steel_plate();
  spec.material.poisson_ratio = 0.6;
  EXPECT_TRUE(mentions(problems_of(spec), "material: poisson_ratio out of range"));
}

TEST(Validate, ReportsEveryViolation) {
  ModelSpec spec = steel_plate();
  spec.material.youngs_modulus = -1.0;
  spec.geometry.lx = 0.0;
  spec.geometry.thickness.reset();
  spec.damping.tension = -5.0;
  const auto problems = problems_of(spec);
  EXPECT_EQ(problems.size(), 4u);
  EXPECT_TRUE(mentions(problems, "youngs_modulus"));
  EXPECT_TRUE(mentions(problems, "thickness"));
  EXPECT_TRUE(mentions(problems, "tension"));
}

TEST(Validate, BergerNeedsPoisson) {
  ModelSpec spec = steel_plate();
  spec.kind = ModelKind::kBerger;
  spec.material.poisson_ratio.reset();
  EXPECT_TRUE(mentions(problems_of(spec), "poisson_ratio is required"));
}

TEST(Validate, StringPoissonIsAWarning) {
  ModelSpec spec = steel_string();
  spec.material.poisson_ratio = 0.3;
  const auto warnings = validate(spec);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("ignored"), std::string::npos);
}

TEST(Validate, ZeroTensionAllowed) {
  ModelSpec spec = steel_plate();
  spec.damping.tension = 0.0;
  EXPECT_NO_THROW(validate(spec));
}

TEST(Units, RoundTripIsExact) {
  for (double v : {200.0, 0.5, 4.0, 0.0625, 1.0 / 1024.0}) {
    EXPECT_EQ(units::pa_to_gpa(units::gpa_to_pa(v)), v);
    EXPECT_EQ(units::m2_to_mm2(units::mm2_to_m2(v)), v);
    EXPECT_EQ(units::m4_to_mm4(units::mm4_to_m4(v)), v);
  }
}

TEST(ModelKind, Spellings) {
  for (auto kind : {ModelKind::kString, ModelKind::kBerger, ModelKind::kVonKarman}) {
    EXPECT_EQ(parse_model_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_model_kind("plate").has_value());
}

}  // namespace
}  // namespace nlm
