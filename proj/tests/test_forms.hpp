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

#include <cmath>

#include "ebc/channel.hpp"

// Small hand-written forms shared by the test executables.
namespace ebc::testing {

inline ComplexMatrix qubit(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

/// F = |+><+|, |-><-| and R = |0><0|, |1><1|.
inline channel::HolevoForm plus_minus_form() {
  return channel::make_holevo_form(
      2, {{qubit(0.5, 0.5, 0.5, 0.5), matrix_unit(2, 0, 0)},
          {qubit(0.5, -0.5, -0.5, 0.5), matrix_unit(2, 1, 1)}});
}

/// The qubit completely depolarizing channel written with three pairs.
inline channel::HolevoForm three_pair_depolarizing_form() {
  return channel::make_holevo_form(
      2, {{0.5 * matrix_unit(2, 0, 0), matrix_unit(2, 0, 0)},
          {0.5 * matrix_unit(2, 1, 1), matrix_unit(2, 0, 0)},
          {0.5 * ComplexMatrix(ComplexMatrix::Identity(2, 2)), matrix_unit(2, 1, 1)}});
}

/// vec(Phi(E_cd)) entry (a, b) = sum_k F_k(d, c) R_k(a, b), written out
/// entry by entry without going through apply().
inline ComplexMatrix natural_rep_by_entries(const channel::HolevoForm& phi) {
  const Eigen::Index n = phi.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& pair : phi.pairs())
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index c = 0; c < n; ++c)
          for (Eigen::Index d = 0; d < n; ++d)
            out(a * n + b, c * n + d) += pair.effect(d, c) * pair.state(a, b);
  return out;
}

}  // namespace ebc::testing
