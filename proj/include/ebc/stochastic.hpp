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

#include <cstdint>
#include <optional>
#include <vector>

#include "ebc/matcore.hpp"

/// Nonnegative-matrix machinery: column-stochastic matrices, primitivity and
/// its index, stationary distributions.
namespace ebc::stochastic {

/// Square, entrywise nonnegative, every column summing to one.
class StochasticMatrix {
 public:
  /// Validates `entries`. Entries in [-stochastic_tol, 0) are clamped to 0.
  /// Throws DimensionMismatch, NegativeEntry or ColumnSumViolation.
  static StochasticMatrix create(RealMatrix entries, const Tolerances& tol = {});

  Eigen::Index size() const noexcept { return entries_.rows(); }
  const RealMatrix& matrix() const noexcept { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  /// Largest |column sum - 1|.
  double column_sum_residual() const;

 private:
  explicit StochasticMatrix(RealMatrix entries) : entries_(std::move(entries)) {}
  RealMatrix entries_;
};

/// Row-major nested-list construction, e.g. from parsed files.
StochasticMatrix make_stochastic(const std::vector<std::vector<double>>& rows,
                                 Eigen::Index r, const Tolerances& tol = {});

/// Zero pattern of a nonnegative matrix: entry > threshold counts as positive.
class BoolMatrix {
 public:
  BoolMatrix(Eigen::Index rows, Eigen::Index cols)
      : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows * cols), 0) {}

  static BoolMatrix pattern(const RealMatrix& m, double threshold);

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return cols_; }
  bool operator()(Eigen::Index i, Eigen::Index j) const { return bits_[index(i, j)] != 0; }
  void set(Eigen::Index i, Eigen::Index j, bool v) { bits_[index(i, j)] = v ? 1 : 0; }

  bool all() const;
  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t index(Eigen::Index i, Eigen::Index j) const {
    return static_cast<std::size_t>(i * cols_ + j);
  }
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<std::uint8_t> bits_;
};

struct PrimitivityVerdict {
  bool primitive = false;
  std::optional<std::uint64_t> index;  // present iff primitive
  std::uint64_t wielandt_bound = 1;
};

/// Wielandt's bound r^2 - 2r + 2 on the index of an r x r primitive matrix.
std::uint64_t wielandt_bound(std::uint64_t r);

/// Entrywise positivity of the boolean power at the Wielandt bound.
/// `positivity_threshold` defaults to stochastic_tol semantics.
bool is_primitive(const RealMatrix& a, double positivity_threshold = Tolerances{}.stochastic_tol);
bool is_primitive(const StochasticMatrix& s, const Tolerances& tol = {});

/// Least m with boolean a^m all-positive, searched linearly up to the bound.
PrimitivityVerdict primitivity_index(const RealMatrix& a,
                                     double positivity_threshold = Tolerances{}.stochastic_tol);
PrimitivityVerdict primitivity_index(const StochasticMatrix& s, const Tolerances& tol = {});

struct StationaryDistribution {
  RealVector pi;
  /// Eigenvalue-1 eigenspace is numerically one dimensional.
  bool unique = false;
};

/// Least-squares solve of [(S - I); 1^T] pi = [0; 1] followed by clamping of
/// tiny negatives. Throws StationarySolveFailure if the result is not a
/// probability vector fixed by S within tolerance.
StationaryDistribution stationary_distribution(const StochasticMatrix& s, const Tolerances& tol = {});

}  // namespace ebc::stochastic
