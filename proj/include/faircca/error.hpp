// Copyright 2026 The FairCCA Authors.
//
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

#ifndef FAIRCCA_ERROR_HPP_
#define FAIRCCA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace faircca {

enum class ErrorCode {
  // Numerical / model failures.
  kConstantColumn,
  kShapeMismatch,
  kRankTooLarge,
  kSingularCovariance,
  kDegenerateDirection,
  kDegenerateAttribute,
  kAttributeOrthogonal,
  kZeroBaseline,
  kNotPSD,
  kDegenerateLabels,
  kRetryExhausted,
  kSingleClass,
  kNonConvergence,
  kClassTooSmall,
  kMissingGroup,
  kSampleTooSmall,
  kConstantSample,
  kZeroVariance,
  kAllZeroDifferences,
  // Input data.
  kParseError,
  kRowCountMismatch,
  kNonBinaryColumn,
  kIoError,
  // Configuration and argument errors.
  kConfigError,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Coarse category used for CLI exit codes.
enum class ErrorCategory { kConfig, kData, kNumerical };

ErrorCategory CategoryOf(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace faircca

#endif  // FAIRCCA_ERROR_HPP_
