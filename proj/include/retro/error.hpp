// Copyright 2026 The Retro Authors
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

namespace retro {

enum class ErrorCode {
  NotHermitian,
  NotPsd,
  DimMismatch,
  InvalidMatrix,
  NotNormalized,
  NotOrthonormal,
  IncompleteBasis,
  IncompletePovm,
  ZeroTraceElement,
  NotUnbiased,
  AllOutcomesDiscarded,
  TimeDirectionViolation,
  TimeOutOfRange,
  ImpossibleOutcome,
  IndexOutOfRange,
  DegenerateConditioning,
  ParseError,
  ValidationError,
  NumericalInconsistency,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` is the stable identity;
/// the message carries the human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors caused by bad user input rather than internal arithmetic.
  bool is_input_error() const noexcept { return code_ != ErrorCode::NumericalInconsistency; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::IncompleteBasis: return "IncompleteBasis";
    case ErrorCode::IncompletePovm: return "IncompletePovm";
    case ErrorCode::ZeroTraceElement: return "ZeroTraceElement";
    case ErrorCode::NotUnbiased: return "NotUnbiased";
    case ErrorCode::AllOutcomesDiscarded: return "AllOutcomesDiscarded";
    case ErrorCode::TimeDirectionViolation: return "TimeDirectionViolation";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::ImpossibleOutcome: return "ImpossibleOutcome";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegenerateConditioning: return "DegenerateConditioning";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NumericalInconsistency: return "NumericalInconsistency";
  }
  return "Unknown";
}

}  // namespace retro
