// Copyright 2026 The xepu Authors
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

namespace xepu {

enum class ErrorKind {
  NotHermitian,
  NotUnitTrace,
  NotPSD,
  ConvergenceFailure,
  InvalidRank,
  OutOfRange,
  NotXState,
  UnphysicalConcurrence,
  QNegative,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitTrace: return "NotUnitTrace";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotXState: return "NotXState";
    case ErrorKind::UnphysicalConcurrence: return "UnphysicalConcurrence";
    case ErrorKind::QNegative: return "QNegative";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable kind plus a human-readable detail.
/// `measured` holds the offending residual or value when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, double measured = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        measured_(measured) {}

  ErrorKind kind() const noexcept { return kind_; }
  double measured() const noexcept { return measured_; }

 private:
  ErrorKind kind_;
  double measured_;
};

}  // namespace xepu
