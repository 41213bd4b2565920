// Copyright 2026 The torusmoments Authors.
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
#include "torusmoments/error.hpp"

namespace torus {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonIncreasingExponents: return "NonIncreasingExponents";
    case ErrorCode::NonPositiveExponent: return "NonPositiveExponent";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IntegerOverflow: return "IntegerOverflow";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::OracleTooLarge: return "OracleTooLarge";
    case ErrorCode::InadmissibleShift: return "InadmissibleShift";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::OddExponentUnsupported: return "OddExponentUnsupported";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InsufficientRows: return "InsufficientRows";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace torus
