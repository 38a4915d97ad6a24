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

#include "faircca/error.hpp"

namespace faircca {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConstantColumn: return "ConstantColumn";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kRankTooLarge: return "RankTooLarge";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kDegenerateDirection: return "DegenerateDirection";
    case ErrorCode::kDegenerateAttribute: return "DegenerateAttribute";
    case ErrorCode::kAttributeOrthogonal: return "AttributeOrthogonal";
    case ErrorCode::kZeroBaseline: return "ZeroBaseline";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kRetryExhausted: return "RetryExhausted";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kClassTooSmall: return "ClassTooSmall";
    case ErrorCode::kMissingGroup: return "MissingGroup";
    case ErrorCode::kSampleTooSmall: return "SampleTooSmall";
    case ErrorCode::kConstantSample: return "ConstantSample";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kAllZeroDifferences: return "AllZeroDifferences";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kRowCountMismatch: return "RowCountMismatch";
    case ErrorCode::kNonBinaryColumn: return "NonBinaryColumn";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorCategory CategoryOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidArgument:
      return ErrorCategory::kConfig;
    case ErrorCode::kParseError:
    case ErrorCode::kRowCountMismatch:
    case ErrorCode::kNonBinaryColumn:
    case ErrorCode::kIoError:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kConstantColumn:
    case ErrorCode::kDegenerateAttribute:
    case ErrorCode::kDegenerateLabels:
    case ErrorCode::kSingleClass:
    case ErrorCode::kClassTooSmall:
    case ErrorCode::kMissingGroup:
      return ErrorCategory::kData;
    default:
      return ErrorCategory::kNumerical;
  }
}

}  // namespace faircca
