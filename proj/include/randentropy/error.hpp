// Copyright 2026 The Randentropy Authors
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

namespace randentropy {

enum class ErrorCode {
  EmptyMatrix,
  TooFewTimeSteps,
  LabelOutOfRange,
  ShapeMismatch,
  InvalidAttribute,
  InvalidArgument,
  InvalidRange,
  SolveFailed,
  NoAdmissiblePosition,
  EmptyCommunity,
  InvalidTheta,
  NumericUnderflow,
  AllZeroAttributes,
  ParseError,
  NameNotFound,
  ReadError,
  WriteError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::TooFewTimeSteps: return "TooFewTimeSteps";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidAttribute: return "InvalidAttribute";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::SolveFailed: return "SolveFailed";
    case ErrorCode::NoAdmissiblePosition: return "NoAdmissiblePosition";
    case ErrorCode::EmptyCommunity: return "EmptyCommunity";
    case ErrorCode::InvalidTheta: return "InvalidTheta";
    case ErrorCode::NumericUnderflow: return "NumericUnderflow";
    case ErrorCode::AllZeroAttributes: return "AllZeroAttributes";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NameNotFound: return "NameNotFound";
    case ErrorCode::ReadError: return "ReadError";
    case ErrorCode::WriteError: return "WriteError";
  }
  return "Unknown";
}

// Every failure raised by the library carries exactly one code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace randentropy
