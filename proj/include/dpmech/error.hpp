// Copyright 2026 The dpmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

namespace dpmech {

enum class ErrorCode {
  kDimensionMismatch,
  kEntryOutOfRange,
  kColumnSumError,
  kUndefinedForN0,
  kAlphaOutOfRange,
  kUnsupportedObjective,
  kNumericalInstability,
  kInputOutOfRange,
  kBadProbability,
  kParseError,
  kUnknownColumn,
  kInvalidArgument,
  kInternal,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::kColumnSumError: return "ColumnSumError";
    case ErrorCode::kUndefinedForN0: return "UndefinedForN0";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kUnsupportedObjective: return "UnsupportedObjective";
    case ErrorCode::kNumericalInstability: return "NumericalInstability";
    case ErrorCode::kInputOutOfRange: return "InputOutOfRange";
    case ErrorCode::kBadProbability: return "BadProbability";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpmech
