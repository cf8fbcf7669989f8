// Copyright 2026 The locc-lab Authors
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

namespace locc {

enum class ErrorCode {
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  NotUnitary,
  ClusterFailure,
  SpecInvalid,
  NonOrthogonalBase,
  TooManyStates,
  BadPriors,
  NotCoisometry,
  NotDiagonal,
  UnknownBlockStructure,
  MalformedTree,
  NotOrthogonal,
  ChannelTooSmall,
  UnsupportedR,
  DuplicateStates,
  RelabelingNotFound,
  Parse,
  BadConfig,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ClusterFailure: return "ClusterFailure";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    case ErrorCode::NonOrthogonalBase: return "NonOrthogonalBase";
    case ErrorCode::TooManyStates: return "TooManyStates";
    case ErrorCode::BadPriors: return "BadPriors";
    case ErrorCode::NotCoisometry: return "NotCoisometry";
    case ErrorCode::NotDiagonal: return "NotDiagonal";
    case ErrorCode::UnknownBlockStructure: return "UnknownBlockStructure";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::ChannelTooSmall: return "ChannelTooSmall";
    case ErrorCode::UnsupportedR: return "UnsupportedR";
    case ErrorCode::DuplicateStates: return "DuplicateStates";
    case ErrorCode::RelabelingNotFound: return "RelabelingNotFound";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Tolerances used for pass/fail decisions. Passed explicitly; there is no
/// process-wide setting.
inline constexpr double kDecisionTol = 1e-9;
inline constexpr double kNumericTol = 1e-10;

}  // namespace locc
