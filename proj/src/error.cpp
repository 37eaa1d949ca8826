// Copyright 2026 The ebchannel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ebc/error.hpp"

namespace ebc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroEffect: return "ZeroEffect";
    case ErrorKind::NotPOVM: return "NotPOVM";
    case ErrorKind::NotDensity: return "NotDensity";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::ColumnSumViolation: return "ColumnSumViolation";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::StationarySolveFailure: return "StationarySolveFailure";
    case ErrorKind::KrausRankTooHigh: return "KrausRankTooHigh";
    case ErrorKind::TracePreservationViolation: return "TracePreservationViolation";
    case ErrorKind::SubsetCapExceeded: return "SubsetCapExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian:
    case ErrorKind::NotPSD:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ZeroEffect:
    case ErrorKind::NotPOVM:
    case ErrorKind::NotDensity:
    case ErrorKind::NegativeEntry:
    case ErrorKind::ColumnSumViolation:
    case ErrorKind::NotStochastic:
    case ErrorKind::KrausRankTooHigh:
    case ErrorKind::TracePreservationViolation:
    case ErrorKind::SchemaViolation:
      return true;
    default:
      return false;
  }
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> pair_index,
                     std::optional<std::size_t> byte_offset) {
  std::string out(to_string(kind));
  if (pair_index) out += " (pair " + std::to_string(*pair_index) + ")";
  if (byte_offset) out += " (byte " + std::to_string(*byte_offset) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> pair_index,
             std::optional<std::size_t> byte_offset)
    : std::runtime_error(decorate(kind, message, pair_index, byte_offset)),
      kind_(kind),
      pair_index_(pair_index),
      byte_offset_(byte_offset) {}

Error Error::at_pair(std::size_t index) const {
  // Strip the decoration so the message is not prefixed twice.
  std::string message = what();
  const auto pos = message.find(": ");
  if (pos != std::string::npos) message = message.substr(pos + 2);
  return Error(kind_, message, index, byte_offset_);
}

}  // namespace ebc
