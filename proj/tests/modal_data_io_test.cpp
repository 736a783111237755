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

#include <string>

#include <gtest/gtest.h>

#include "nlm/engine.hpp"
#include "nlm/error.hpp"
#include "nlm/modal_data.hpp"
#include "scenes.hpp"

namespace nlm {
namespace {

const char* kMinimal = R"({"format_version": 1, "kind": "string", "rho": 0.01,
  "bending_stiffness": 0, "nonlinear_gain": 1e7,
  "points": {"a": [0.3]},
  "modes": [{"lambda": 9.87, "norm_sq": 0.5, "shape_at": {"a": 0.81}},
            {"lambda": 39.5, "norm_sq": 0.5, "index": [2, 0], "shape_at": {"a": 0.95}}]})";

std::string message_of(const std::string& text) {
  try {
    parse_modal_data(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCustomData);
    return e.what();
  }
  return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

TEST(ParseModalData, Minimal) {
  const ModalData data = parse_modal_data(kMinimal);
  EXPECT_EQ(data.kind, ModelKind::kString);
  ASSERT_EQ(data.modes.size(), 2u);
  EXPECT_EQ(data.modes[1].shape_at.at("a"), 0.95);
  EXPECT_FALSE(data.modes[0].index.has_value());
  EXPECT_EQ(data.modes[1].index, (ModeIndex{2, 0}));
  EXPECT_TRUE(data.h_dims.empty());
}

TEST(ParseModalData, Strictness) {
  EXPECT_NE(message_of(replace(kMinimal, "\"rho\"", "\"density\"")).find("density: unknown key"), std::string::npos);
  EXPECT_NE(message_of(replace(kMinimal, "\"format_version\": 1", "\"format_version\": 2")).find("unsupported version"),
            std::string::npos);
  EXPECT_NE(message_of(replace(kMinimal, "\"format_version\": 1, ", "")).find("format_version"), std::string::npos);
  EXPECT_NE(message_of(replace(kMinimal, "{\"a\": 0.81}", "{\"b\": 0.81}")).find("undeclared point"),
            std::string::npos);
  EXPECT_NE(message_of(replace(kMinimal, "\"norm_sq\": 0.5, \"shape_at\"", "\"shape_at\"")).find("norm_sq"),
            std::string::npos);
  EXPECT_FALSE(message_of("[1, 2").empty());
}

TEST(SerializeModalData, ExactRoundTrip) {
  const Voice voice = prepare(testing::vk_scene());
  const ModalData data = export_modal_data(voice);
  const ModalData back = parse_modal_data(serialize_modal_data(data));
  EXPECT_EQ(back.rho, data.rho);
  EXPECT_EQ(back.nonlinear_gain, data.nonlinear_gain);
  EXPECT_EQ(back.h_dims, data.h_dims);
  EXPECT_EQ(back.h_data, data.h_data);
  ASSERT_EQ(back.modes.size(), data.modes.size());
  for (std::size_t k = 0; k < data.modes.size(); ++k) {
    EXPECT_EQ(back.modes[k].lambda, data.modes[k].lambda);
    EXPECT_EQ(back.modes[k].shape_at, data.modes[k].shape_at);
  }
  EXPECT_EQ(back.points, data.points);
  EXPECT_EQ(serialize_modal_data(back), serialize_modal_data(data));
}

TEST(ReadModalData, MissingFile) {
  try {
    read_modal_data("/nonexistent/modes.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace nlm
