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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ebc {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  ConvergenceFailure,
  DimensionMismatch,
  InvalidArgument,
  // Holevo form validation.
  ZeroEffect,
  NotPOVM,
  NotDensity,
  // Stochastic matrices.
  NegativeEntry,
  ColumnSumViolation,
  NotStochastic,
  StationarySolveFailure,
  // Builders.
  KrausRankTooHigh,
  TracePreservationViolation,
  // Primitivity.
  SubsetCapExceeded,
  // Documents.
  SyntaxError,
  SchemaViolation,
};

std::string_view to_string(ErrorKind kind);

/// True for the kinds that describe an invalid channel/state/matrix rather
/// than a numerical or usage problem.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> pair_index = std::nullopt,
        std::optional<std::size_t> byte_offset = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  /// Index of the offending (F, R) pair, when the error concerns one.
  std::optional<std::size_t> pair_index() const noexcept { return pair_index_; }
  /// Byte offset into the parsed text for syntax errors.
  std::optional<std::size_t> byte_offset() const noexcept { return byte_offset_; }

  /// Copy of this error tagged with a pair index.
  Error at_pair(std::size_t index) const;

 private:
  ErrorKind kind_;
  std::optional<std::size_t> pair_index_;
  std::optional<std::size_t> byte_offset_;
};

}  // namespace ebc
