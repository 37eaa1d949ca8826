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
#include <utility>
#include <vector>

#include "ebc/matcore.hpp"
#include "ebc/stochastic.hpp"

/// Entanglement breaking channels in Holevo form,
///
///   Phi(rho) = sum_k tr(F_k rho) R_k,
///
/// with {F_k} a POVM of nonzero effects and every R_k a density matrix, and
/// the representations derived from such a form.
namespace ebc::channel {

using stochastic::StochasticMatrix;

/// Positive semidefinite, unit trace.
class DensityMatrix {
 public:
  /// Throws DimensionMismatch or NotDensity.
  static DensityMatrix create(ComplexMatrix value, const Tolerances& tol = {});

  Eigen::Index dim() const noexcept { return value_.rows(); }
  const ComplexMatrix& value() const noexcept { return value_; }

 private:
  friend DensityMatrix trusted_density(ComplexMatrix);
  explicit DensityMatrix(ComplexMatrix value) : value_(std::move(value)) {}
  ComplexMatrix value_;
};

/// Wraps a matrix that is a density matrix by construction (channel outputs,
/// convex combinations of validated states). No checks.
DensityMatrix trusted_density(ComplexMatrix value);

struct HolevoPair {
  ComplexMatrix effect;  // F_k
  ComplexMatrix state;   // R_k
};

class HolevoForm {
 public:
  /// Validates every invariant. Errors carry the offending pair index where
  /// one exists: DimensionMismatch, ZeroEffect, NotPOVM, NotDensity.
  static HolevoForm create(Eigen::Index n, std::vector<HolevoPair> pairs,
                           const Tolerances& tol = {});

  Eigen::Index dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  const std::vector<HolevoPair>& pairs() const noexcept { return pairs_; }
  const ComplexMatrix& effect(std::size_t k) const { return pairs_.at(k).effect; }
  const ComplexMatrix& state(std::size_t k) const { return pairs_.at(k).state; }

 private:
  friend HolevoForm iterated_form(const HolevoForm&, std::size_t);
  HolevoForm(Eigen::Index n, std::vector<HolevoPair> pairs) : n_(n), pairs_(std::move(pairs)) {}
  Eigen::Index n_;
  std::vector<HolevoPair> pairs_;
};

inline HolevoForm make_holevo_form(Eigen::Index n, std::vector<HolevoPair> pairs,
                                   const Tolerances& tol = {}) {
  return HolevoForm::create(n, std::move(pairs), tol);
}

/// Phi(rho). Throws DimensionMismatch.
DensityMatrix apply(const HolevoForm& phi, const DensityMatrix& rho);
/// Linear extension of Phi to arbitrary n x n matrices.
ComplexMatrix apply_linear(const HolevoForm& phi, const ComplexMatrix& x);
/// Phi^m(x) by repeated application.
ComplexMatrix apply_power(const HolevoForm& phi, const ComplexMatrix& x, std::size_t m);

/// n^2 x n^2 matrix acting on row-major vec coordinates:
/// vec(Phi(X)) = natural_rep(Phi) * vec(X).
ComplexMatrix natural_rep(const HolevoForm& phi);

/// sum_ij E_ij (x) Phi(E_ij).
ComplexMatrix choi(const HolevoForm& phi);
/// sum_k F_k^T (x) R_k. Equal to choi() for every Holevo form.
ComplexMatrix choi_from_pairs(const HolevoForm& phi);

/// [Phi] = A B and S = B A: column k of A is vec(R_k), row k of B is vec(F_k^T)^T.
struct Factorization {
  ComplexMatrix a;  // n^2 x r
  ComplexMatrix b;  // r x n^2
};
Factorization factorization(const HolevoForm& phi);

/// Unvalidated real matrix (Re tr(F_i R_j)).
RealMatrix transition_entries(const HolevoForm& phi);

/// S = (tr(F_i R_j)). Throws NegativeEntry or ColumnSumViolation when the form
/// has been corrupted.
StochasticMatrix stochastic_rep(const HolevoForm& phi, const Tolerances& tol = {});

/// Holevo form of Phi^m: effects G_k = sum_j (S^{m-1})_{kj} F_j with the
/// original states. Some G_k may vanish (zero rows of S^{m-1}); the returned
/// form is exempt from the nonzero-effect requirement for that reason.
/// Throws InvalidArgument if m == 0.
HolevoForm iterated_form(const HolevoForm& phi, std::size_t m);

struct FixedPoint {
  DensityMatrix state;   // sum_k pi_k R_k
  RealVector stationary; // pi
  bool unique = false;   // eigenvalue-1 eigenspace of S is one dimensional
  double residual = 0.0; // max |Phi(rho*) - rho*|
};

/// Throws StationarySolveFailure.
FixedPoint fixed_point(const HolevoForm& phi, const Tolerances& tol = {});

struct SpectrumComparison {
  std::vector<Complex> channel_nonzero;
  std::vector<Complex> matrix_nonzero;
  double max_pair_distance = 0.0;
  bool matched = false;
};

/// Pairing of two eigenvalue multisets minimising the largest distance.
struct Pairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (index in a, index in b)
  double max_distance = 0.0;
};

/// Every element of the smaller multiset is paired with a distinct element of
/// the larger one. Exact bottleneck assignment when both have at most 32
/// elements, greedy nearest pairs beyond.
Pairing pair_multisets(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Non-zero eigenvalues of [Phi] and of S, compared as multisets.
SpectrumComparison compare_nonzero_spectrum(const HolevoForm& phi, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Builders

/// {(I, I/n)}.
HolevoForm depolarizing(Eigen::Index n);
/// {(|k><k|, |k><k|)}: replaces off-diagonal entries by zero.
HolevoForm map_to_diagonal(Eigen::Index n);
/// Quantum-classical channel F_k = sum_j s_kj |j><j|, R_k = |k><k|.
/// Rows of S that vanish give zero effects, which throws ZeroEffect.
HolevoForm qc_from_stochastic(const StochasticMatrix& s, const Tolerances& tol = {});
/// V_k = |a_k><b_k| -> (V_k^* V_k, V_k V_k^* / tr(V_k V_k^*)).
/// Throws KrausRankTooHigh, TracePreservationViolation, DimensionMismatch.
HolevoForm holevo_from_rank_one_kraus(const std::vector<ComplexMatrix>& kraus,
                                      const Tolerances& tol = {});

}  // namespace ebc::channel
