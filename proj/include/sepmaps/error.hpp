// Copyright 2026 The sepmaps Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sepmaps {

enum class ErrorCode {
  DimensionMismatch,
  NotHermitian,
  OddDimension,
  WrongDims,
  SingularMap,
  Singular,
  NotPSD,
  InvalidParameter,
  RegionViolation,
  ToleranceConflict,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Exception type for every failure raised by the library. The code is
/// stable; the message carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::WrongDims: return "WrongDims";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::RegionViolation: return "RegionViolation";
    case ErrorCode::ToleranceConflict: return "ToleranceConflict";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace sepmaps
