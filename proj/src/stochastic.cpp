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

#include "ebc/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace ebc::stochastic {

namespace {

constexpr double kStationaryResidualTol = 1e-10;

// Clamp window never shrinks below a few ulps, even with stochastic_tol = 0.
double clamp_window(const Tolerances& tol) {
  return std::max(tol.stochastic_tol, 64 * std::numeric_limits<double>::epsilon());
}

}  // namespace

StochasticMatrix StochasticMatrix::create(RealMatrix entries, const Tolerances& tol) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "stochastic matrix must be nonempty and square");
  }
  if (!entries.allFinite()) {
    throw Error(ErrorKind::NotStochastic, "stochastic matrix has non-finite entries");
  }
  const double window = clamp_window(tol);
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      double& v = entries(i, j);
      if (v < -window) {
        throw Error(ErrorKind::NegativeEntry, "entry (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") = " + std::to_string(v));
      }
      if (v < 0.0) v = 0.0;
    }
  }
  for (Eigen::Index j = 0; j < entries.cols(); ++j) {
    const double sum = entries.col(j).sum();
    if (std::abs(sum - 1.0) > window) {
      throw Error(ErrorKind::ColumnSumViolation,
                  "column " + std::to_string(j) + " sums to " + std::to_string(sum));
    }
  }
  return StochasticMatrix(std::move(entries));
}

double StochasticMatrix::column_sum_residual() const {
  return (entries_.colwise().sum().array() - 1.0).abs().maxCoeff();
}

StochasticMatrix make_stochastic(const std::vector<std::vector<double>>& rows, Eigen::Index r,
                                 const Tolerances& tol) {
  if (r <= 0 || static_cast<Eigen::Index>(rows.size()) != r) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(r) + " rows");
  }
  RealMatrix m(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != r) {
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(i) + " has wrong length");
    }
    for (Eigen::Index j = 0; j < r; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return StochasticMatrix::create(std::move(m), tol);
}

// ---------------------------------------------------------------------------
// Boolean patterns

BoolMatrix BoolMatrix::pattern(const RealMatrix& m, double threshold) {
  BoolMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.set(i, j, m(i, j) > threshold);
  }
  return out;
}

bool BoolMatrix::all() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; });
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "boolean product shape mismatch");
  }
  BoolMatrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (!a(i, k)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(k, j)) out.set(i, j, true);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Primitivity

std::uint64_t wielandt_bound(std::uint64_t r) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "wielandt_bound requires r >= 1");
  return r * r - 2 * r + 2;
}

namespace {

void require_nonnegative_square(const RealMatrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "primitivity needs a nonempty square matrix");
  }
}

}  // namespace

bool is_primitive(const RealMatrix& a, double positivity_threshold) {
  require_nonnegative_square(a);
  const std::uint64_t bound = wielandt_bound(static_cast<std::uint64_t>(a.rows()));
  const BoolMatrix base = BoolMatrix::pattern(a, positivity_threshold);
  // Square-and-multiply; only the final power is needed here.
  BoolMatrix result = base;
  BoolMatrix square = base;
  std::uint64_t e = bound - 1;
  while (e > 0) {
    if (e & 1U) result = result * square;
    e >>= 1U;
    if (e > 0) square = square * square;
  }
  return result.all();
}

bool is_primitive(const StochasticMatrix& s, const Tolerances& tol) {
  return is_primitive(s.matrix(), tol.stochastic_tol);
}

PrimitivityVerdict primitivity_index(const RealMatrix& a, double positivity_threshold) {
  require_nonnegative_square(a);
  PrimitivityVerdict verdict;
  verdict.wielandt_bound = wielandt_bound(static_cast<std::uint64_t>(a.rows()));
  const BoolMatrix base = BoolMatrix::pattern(a, positivity_threshold);
  BoolMatrix power = base;
  for (std::uint64_t m = 1; m <= verdict.wielandt_bound; ++m) {
    if (power.all()) {
      verdict.primitive = true;
      verdict.index = m;
      return verdict;
    }
    power = power * base;
  }
  return verdict;
}

PrimitivityVerdict primitivity_index(const StochasticMatrix& s, const Tolerances& tol) {
  return primitivity_index(s.matrix(), tol.stochastic_tol);
}

// ---------------------------------------------------------------------------
// Stationary distributions

StationaryDistribution stationary_distribution(const StochasticMatrix& s, const Tolerances& tol) {
  const Eigen::Index r = s.size();
  const RealMatrix shifted = s.matrix() - RealMatrix::Identity(r, r);

  RealMatrix system(r + 1, r);
  system.topRows(r) = shifted;
  system.row(r).setOnes();
  RealVector rhs = RealVector::Zero(r + 1);
  rhs(r) = 1.0;

  // Minimum-norm least squares; for several closed classes this mixes their
  // stationary vectors with positive weights.
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(system);
  RealVector pi = cod.solve(rhs);

  const double window = std::max(clamp_window(tol), kStationaryResidualTol);
  for (Eigen::Index k = 0; k < r; ++k) {
    if (!std::isfinite(pi(k)) || pi(k) < -window) {
      throw Error(ErrorKind::StationarySolveFailure,
                  "stationary solve produced entry " + std::to_string(pi(k)));
    }
    pi(k) = std::max(pi(k), 0.0);
  }
  const double total = pi.sum();
  if (!(total > 0.0)) {
    throw Error(ErrorKind::StationarySolveFailure, "stationary solve produced a zero vector");
  }
  pi /= total;
  const double residual = (s.matrix() * pi - pi).cwiseAbs().maxCoeff();
  if (residual > kStationaryResidualTol) {
    throw Error(ErrorKind::StationarySolveFailure,
                "stationary residual " + std::to_string(residual) + " exceeds 1e-10");
  }

  Eigen::JacobiSVD<RealMatrix> svd(shifted);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.zero_eig_tol * std::max(1.0, sv(0));
  const auto nullity = (sv.array() <= cutoff).count();

  return {std::move(pi), nullity == 1};
}

}  // namespace ebc::stochastic
