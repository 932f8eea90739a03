// Copyright 2026 The mlsynth Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlsynth {

enum class ErrorCode {
  kLayerNotFound,
  kUnknownLogicalLink,
  kParamsInfeasible,
  kParseError,
  kValidationError,
  kUnroutable,
  kInfeasibleSolution,
  kLimitsExceeded,
  kNoData,
  kIoError,
};

constexpr std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLayerNotFound: return "LAYER_NOT_FOUND";
    case ErrorCode::kUnknownLogicalLink: return "UNKNOWN_LOGICAL_LINK";
    case ErrorCode::kParamsInfeasible: return "PARAMS_INFEASIBLE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kValidationError: return "VALIDATION_ERROR";
    case ErrorCode::kUnroutable: return "UNROUTABLE";
    case ErrorCode::kInfeasibleSolution: return "INFEASIBLE_SOLUTION";
    case ErrorCode::kLimitsExceeded: return "LIMITS_EXCEEDED";
    case ErrorCode::kNoData: return "NO_DATA";
    case ErrorCode::kIoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

// Every failure raised by the library. `details` carries per-item
// diagnostics (violated invariants, offending field paths).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(std::string(code_name(code)) + ": " + message),
        code_(code),
        details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace mlsynth
