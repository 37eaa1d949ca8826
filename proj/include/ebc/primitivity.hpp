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
#include <cstdint>
#include <optional>
#include <vector>

#include "ebc/channel.hpp"

/// Primitivity of entanglement breaking channels.
///
/// A channel is primitive when some iterate maps every density matrix to a
/// positive definite one; q(Phi) is the least such iterate. For a Holevo form
/// this holds exactly when S is primitive and sum_k R_k is positive definite,
/// and then |q(Phi) - p(S)| <= 1.
namespace ebc::primitivity {

using channel::HolevoForm;

struct Options {
  Tolerances tol;
  /// Largest r for which the 2^r kernel-partition enumeration is attempted.
  std::size_t subset_cap = 20;
  /// Search q over 1..p+1 instead of the window max(1, p-1)..p+1.
  bool full_range = false;
};

/// Evidence that Phi^m(psi psi^*) is singular: psi lies in the kernel of
/// sum_{k not in T} G_k and phi in the kernel of sum_{k in T} R_k, so
/// <phi|Phi^m(psi psi^*)|phi> = 0.
struct Witness {
  std::vector<std::size_t> subset;  // T, ascending
  ComplexVector psi;                // input pure state, unit norm
  ComplexVector phi;                // output direction, unit norm
};

struct PositivityCheck {
  bool positive = false;           // Phi^m(rho) > 0 for every density rho
  std::optional<Witness> witness;  // present iff !positive
};

/// sum_k R_k is positive definite.
bool sum_R_positive_definite(const HolevoForm& phi, const Tolerances& tol = {});

/// Decides whether Phi^m maps every density matrix to a positive definite
/// matrix by enumerating subsets T of {0..r-1} in lexicographic order; the
/// first T with ker(sum_T R_k) and ker(sum_{not T} G_k) both nontrivial is
/// returned as the witness. Throws SubsetCapExceeded when r > subset_cap.
PositivityCheck strictly_positive_at(const HolevoForm& phi, std::size_t m,
                                     const Options& options = {});

/// S primitive and sum_k R_k positive definite.
bool is_primitive_channel(const HolevoForm& phi, const Tolerances& tol = {});

enum class QMethod { Exact, BoundsOnly };

struct ChannelPrimitivityReport {
  bool s_primitive = false;
  bool sum_R_pd = false;
  bool channel_primitive = false;
  std::optional<std::uint64_t> p_index;
  std::optional<std::uint64_t> q_index;
  std::optional<bool> bound_abs_diff_ok;     // |q - p| <= 1
  std::optional<bool> holevo_rank_bound_ok;  // q <= r^2 - 2r + 3
  QMethod q_method = QMethod::Exact;
  /// Search window for q (the reported range when q_method is BoundsOnly).
  std::optional<std::uint64_t> q_window_low;
  std::optional<std::uint64_t> q_window_high;
  /// Phi^{q+1} was confirmed strictly positive.
  std::optional<bool> monotone_after_q;
  /// The exact search found no strictly positive iterate inside the window
  /// even though the channel is primitive.
  bool window_violation = false;
};

ChannelPrimitivityReport channel_primitivity_index(const HolevoForm& phi,
                                                   const Options& options = {});

struct HolevoRankBounds {
  std::size_t lower = 0;            // numerical rank of [Phi]
  std::size_t upper = 1;            // r of the given form
  std::uint64_t q_upper_from_rank = 2;  // r^2 - 2r + 3
};

HolevoRankBounds holevo_rank_bounds(const HolevoForm& phi, const Tolerances& tol = {});

struct WielandtComparison {
  std::int64_t q_bound_holevo = 0;   // r^2 - 2r + 3
  std::int64_t q_bound_quantum = 0;  // (n^2 - d + 1) n^2
};

/// `kraus_count` is the number of Kraus operators of some implementation of
/// Phi, 1 <= d <= n^2. Throws InvalidArgument otherwise.
WielandtComparison quantum_wielandt_comparison(const HolevoForm& phi, std::uint64_t kraus_count);

/// <phi| Phi^m(psi psi^*) |phi> evaluated through repeated application.
double witness_value(const HolevoForm& phi, std::size_t m, const Witness& witness);

}  // namespace ebc::primitivity
