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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlm {

/// Error categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorCode : int {
  kUsage = 1,
  kSceneFormat = 2,
  kValidation = 3,
  kBasis = 4,
  kCoupling = 5,
  kCustomData = 6,
  kIo = 7,
  kDiverged = 8,
  kAttribute = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Aggregated invariant violations; what() joins them with "; ".
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Raised when the state leaves the finite range or exceeds the displacement
/// bound. `sample_index` is the first offending output sample.
class DivergedError : public Error {
 public:
  DivergedError(std::int64_t sample_index, const std::string& reason);

  std::int64_t sample_index() const noexcept { return sample_index_; }

 private:
  std::int64_t sample_index_;
};

}  // namespace nlm
