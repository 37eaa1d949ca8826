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

#include <cmath>
#include <limits>
#include <map>

#include <gtest/gtest.h>

#include "ebc/primitivity.hpp"
#include "ebc/sampling.hpp"
#include "test_forms.hpp"

using namespace ebc;
using namespace ebc::primitivity;
using ebc::testing::plus_minus_form;
using ebc::testing::three_pair_depolarizing_form;

namespace {

// Least m <= limit for which the Choi matrix of Phi^m, built from the m-th
// power of the natural representation, is positive definite. That is
// sufficient for Phi^m to map every state to a positive definite matrix, so
// it bounds q from above; for a primitive channel it happens eventually
// because the Choi matrix tends to I (x) rho* with rho* > 0. 0 when none.
std::uint64_t choi_positive_index(const channel::HolevoForm& phi, std::uint64_t limit) {
  const Eigen::Index n = phi.dim();
  const ComplexMatrix rep = channel::natural_rep(phi);
  ComplexMatrix power = rep;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const ComplexMatrix image = unvec(power.col(i * n + j), n);
        choi += tensor(matrix_unit(n, i, j), image);
      }
    choi = 0.5 * (choi + choi.adjoint()).eval();
    if (eig_hermitian(choi).eigenvalues.minCoeff() > 1e-9) return m;
    power = rep * power;
  }
  return 0;
}

// Smallest eigenvalue of Phi^m(psi psi^*) over random pure inputs, by
// repeated application.
double min_output_eigenvalue(const channel::HolevoForm& phi, std::size_t m, sampling::Rng& rng) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    const ComplexMatrix out = channel::apply_power(phi, outer(sampling::random_pure_state(phi.dim(), rng)), m);
    lowest = std::min(lowest, eig_hermitian(out).eigenvalues.minCoeff());
  }
  return lowest;
}

}  // namespace

TEST(SumR, Examples) {
  EXPECT_TRUE(sum_R_positive_definite(plus_minus_form()));
  EXPECT_TRUE(sum_R_positive_definite(channel::depolarizing(3)));
  const auto pure_output = channel::make_holevo_form(
      2, {{ComplexMatrix(ComplexMatrix::Identity(2, 2)), matrix_unit(2, 0, 0)}});
  EXPECT_FALSE(sum_R_positive_definite(pure_output));
  EXPECT_FALSE(is_primitive_channel(pure_output));
}

TEST(PrimitiveChannel, Examples) {
  EXPECT_TRUE(is_primitive_channel(plus_minus_form()));
  EXPECT_TRUE(is_primitive_channel(three_pair_depolarizing_form()));
  EXPECT_TRUE(is_primitive_channel(channel::depolarizing(2)));
  EXPECT_FALSE(is_primitive_channel(channel::map_to_diagonal(2)));
}

TEST(StrictPositivity, PlusMinusExample) {
  const auto phi = plus_minus_form();
  const auto first = strictly_positive_at(phi, 1);
  EXPECT_FALSE(first.positive);
  ASSERT_TRUE(first.witness.has_value());
  EXPECT_LE(witness_value(phi, 1, *first.witness), 1e-8);
  EXPECT_TRUE(strictly_positive_at(phi, 2).positive);
}

TEST(StrictPositivity, LexicographicWitness) {
  // The first subset in lexicographic order with both kernels nontrivial is {0}.
  const auto check = strictly_positive_at(plus_minus_form(), 1);
  ASSERT_TRUE(check.witness.has_value());
  EXPECT_EQ(check.witness->subset, std::vector<std::size_t>{0});
  EXPECT_NEAR(check.witness->psi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(check.witness->phi.norm(), 1.0, 1e-12);
}

TEST(StrictPositivity, SubsetCap) {
  Options options;
  options.subset_cap = 2;
  try {
    strictly_positive_at(three_pair_depolarizing_form(), 1, options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SubsetCapExceeded);
  }
}

TEST(StrictPositivity, PositiveDefiniteEffectsGiveIndexOne) {
  sampling::Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = sampling::random_holevo_form(2 + trial % 2, 2 + trial % 3, rng);
    bool all_pd = true;
    for (const auto& pair : phi.pairs()) all_pd = all_pd && is_pd(pair.effect);
    if (!all_pd || !sum_R_positive_definite(phi)) continue;
    EXPECT_TRUE(strictly_positive_at(phi, 1).positive);
  }
}

TEST(ChannelIndex, PlusMinusExample) {
  const auto report = channel_primitivity_index(plus_minus_form());
  EXPECT_TRUE(report.channel_primitive);
  EXPECT_EQ(report.p_index, 1U);
  EXPECT_EQ(report.q_index, 2U);
  EXPECT_EQ(report.bound_abs_diff_ok, true);
  EXPECT_EQ(report.holevo_rank_bound_ok, true);
  EXPECT_FALSE(report.window_violation);
}

TEST(ChannelIndex, ThreePairExample) {
  const auto report = channel_primitivity_index(three_pair_depolarizing_form());
  EXPECT_EQ(report.p_index, 2U);
  EXPECT_EQ(report.q_index, 1U);
  EXPECT_EQ(report.monotone_after_q, true);
}

TEST(ChannelIndex, NonPrimitiveHasNoIndex) {
  const auto report = channel_primitivity_index(channel::map_to_diagonal(3));
  EXPECT_FALSE(report.s_primitive);
  EXPECT_FALSE(report.channel_primitive);
  EXPECT_FALSE(report.q_index.has_value());
}

TEST(ChannelIndex, BoundsOnlyAboveCap) {
  Options options;
  options.subset_cap = 2;
  const auto report = channel_primitivity_index(three_pair_depolarizing_form(), options);
  EXPECT_EQ(report.q_method, QMethod::BoundsOnly);
  EXPECT_FALSE(report.q_index.has_value());
  EXPECT_EQ(report.q_window_low, 1U);
  EXPECT_EQ(report.q_window_high, 3U);
}

// The two-condition characterisation and q against oracles that never look
// at S or at kernels: the Choi matrix of Phi^m (upper bound on q, eventual
// primitivity), the witness at q - 1 re-evaluated through apply, and random
// pure inputs at q.
TEST(ChannelIndex, MatchesIndependentOracles) {
  sampling::Rng rng(2);
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> seen;
  for (int trial = 0; trial < 150; ++trial) {
    const Eigen::Index n = 2 + trial % 2;
    const std::size_t r = 1 + trial % 5;
    const auto phi = sampling::random_structured_form(n, r, rng);
    const auto choi_index = choi_positive_index(phi, 200);
    const auto report = channel_primitivity_index(phi);
    ASSERT_EQ(report.channel_primitive, choi_index != 0) << "trial " << trial;
    EXPECT_EQ(is_primitive_channel(phi), choi_index != 0);
    if (choi_index == 0) continue;

    ASSERT_TRUE(report.q_index.has_value());
    const auto q = *report.q_index;
    const auto p = *report.p_index;
    EXPECT_LE(q, choi_index) << "trial " << trial;
    EXPECT_GT(min_output_eigenvalue(phi, q, rng), 0.0) << "trial " << trial;
    if (q > 1) {
      const auto before = strictly_positive_at(phi, q - 1);
      ASSERT_FALSE(before.positive);
      EXPECT_LE(witness_value(phi, q - 1, *before.witness), 1e-8);
    }
    EXPECT_LE(std::max(p, q) - std::min(p, q), 1U);
    EXPECT_LE(q, r * r - 2 * r + 3);
    ++seen[{p, q}];
  }
  // The sample must exercise q below and above p.
  int below = 0;
  int above = 0;
  for (const auto& [pq, count] : seen) {
    if (pq.second < pq.first) below += count;
    if (pq.second > pq.first) above += count;
  }
  EXPECT_GT(below, 0);
  EXPECT_GT(above, 0);
}

TEST(ChannelIndex, FullRangeAgreesWithWindow) {
  sampling::Rng rng(3);
  Options full;
  full.full_range = true;
  for (int trial = 0; trial < 60; ++trial) {
    const auto phi = sampling::random_structured_form(2 + trial % 2, 1 + trial % 5, rng);
    const auto windowed = channel_primitivity_index(phi);
    const auto wide = channel_primitivity_index(phi, full);
    EXPECT_EQ(windowed.q_index, wide.q_index);
  }
}

TEST(Witness, SoundOnRandomForms) {
  sampling::Rng rng(4);
  int witnesses = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto phi = sampling::random_structured_form(2 + trial % 2, 1 + trial % 5, rng);
    for (std::size_t m = 1; m <= 3; ++m) {
      const auto check = strictly_positive_at(phi, m);
      if (check.positive) continue;
      ++witnesses;
      EXPECT_LE(witness_value(phi, m, *check.witness), 1e-8);
    }
  }
  EXPECT_GT(witnesses, 20);
}

TEST(RankBounds, Examples) {
  const auto dep = holevo_rank_bounds(channel::depolarizing(2));
  EXPECT_EQ(dep.lower, 1U);
  EXPECT_EQ(dep.upper, 1U);

  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) kraus.push_back(matrix_unit(2, i, j) / std::sqrt(2.0));
  const auto from_kraus = holevo_rank_bounds(channel::holevo_from_rank_one_kraus(kraus));
  EXPECT_EQ(from_kraus.lower, 1U);
  EXPECT_EQ(from_kraus.upper, 4U);
  EXPECT_EQ(from_kraus.q_upper_from_rank, 11U);

  const auto three = holevo_rank_bounds(three_pair_depolarizing_form());
  EXPECT_EQ(three.q_upper_from_rank, 6U);
}

TEST(RankBounds, LowerNeverExceedsUpper) {
  sampling::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto phi = sampling::random_structured_form(2 + trial % 2, 1 + trial % 6, rng);
    const auto b = holevo_rank_bounds(phi);
    EXPECT_LE(b.lower, b.upper);
    EXPECT_GE(b.lower, 1U);
  }
}

TEST(QuantumWielandt, Examples) {
  const auto dep = channel::depolarizing(2);
  EXPECT_EQ(quantum_wielandt_comparison(dep, 1).q_bound_quantum, 16);
  EXPECT_EQ(quantum_wielandt_comparison(dep, 4).q_bound_quantum, 4);
  EXPECT_EQ(quantum_wielandt_comparison(dep, 1).q_bound_holevo, 2);
  EXPECT_EQ(quantum_wielandt_comparison(channel::depolarizing(3), 9).q_bound_quantum, 9);
  EXPECT_EQ(quantum_wielandt_comparison(channel::depolarizing(3), 1).q_bound_quantum, 81);

  const auto two_pairs = quantum_wielandt_comparison(plus_minus_form(), 2);
  EXPECT_EQ(two_pairs.q_bound_holevo, 3);
  EXPECT_EQ(two_pairs.q_bound_quantum, 12);
  const auto three_pairs = quantum_wielandt_comparison(
      channel::qc_from_stochastic(stochastic::StochasticMatrix::create(
          RealMatrix::Constant(3, 3, 1.0 / 3.0))),
      9);
  EXPECT_EQ(three_pairs.q_bound_holevo, 6);
  EXPECT_EQ(three_pairs.q_bound_quantum, 9);
  EXPECT_THROW(quantum_wielandt_comparison(dep, 0), Error);
  EXPECT_THROW(quantum_wielandt_comparison(dep, 5), Error);
}
