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

#include <random>
#include <vector>

#include "ebc/channel.hpp"

/// Random operators, states, stochastic matrices and Holevo forms for the
/// property suites and the `verify` command.
namespace ebc::sampling {

using Rng = std::mt19937_64;

/// i.i.d. standard complex Gaussian entries.
ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng);
/// H H^* with H an n x rank Gaussian matrix.
ComplexMatrix random_psd(Eigen::Index n, Eigen::Index rank, Rng& rng);
/// Haar-distributed unit vector.
ComplexVector random_pure_state(Eigen::Index n, Rng& rng);
/// G G^* / tr(G G^*); rank 0 means full rank.
channel::DensityMatrix random_density(Eigen::Index n, Rng& rng, Eigen::Index rank = 0);

/// F_k = M^{-1/2} A_k M^{-1/2} with random PSD A_k of rank drawn from
/// 1..max_rank and M = sum_k A_k. Ranks are raised until they add up to n;
/// if M is still numerically singular, eps * I (eps = 1e-6) is added to
/// every A_k.
std::vector<ComplexMatrix> random_povm(Eigen::Index n, std::size_t r, Rng& rng,
                                       Eigen::Index max_rank = 0);

struct FormShape {
  Eigen::Index max_effect_rank = 0;  // 0 = n
  Eigen::Index max_state_rank = 0;   // 0 = n
};

channel::HolevoForm random_holevo_form(Eigen::Index n, std::size_t r, Rng& rng,
                                       FormShape shape = {});

/// Columns are random probability vectors; each entry is zeroed with
/// probability zero_probability (one entry per column always survives).
/// With nonzero_rows set, no row is left entirely zero.
stochastic::StochasticMatrix random_stochastic(Eigen::Index r, Rng& rng,
                                               double zero_probability = 0.0,
                                               bool nonzero_rows = false);

/// Draws from several families so that non-primitive channels, singular
/// sum_k R_k and q != p all occur: generic full-rank forms, rank-one forms,
/// diagonal forms with sparse supports, and forms whose states share a
/// proper subspace.
channel::HolevoForm random_structured_form(Eigen::Index n, std::size_t r, Rng& rng);

}  // namespace ebc::sampling
