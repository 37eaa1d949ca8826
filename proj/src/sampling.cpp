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

#include "ebc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

namespace ebc::sampling {

namespace {

constexpr double kRegularisation = 1e-6;

Eigen::Index uniform_index(Eigen::Index lo, Eigen::Index hi, Rng& rng) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& m) {
  const auto eig = eig_hermitian(m);
  const RealVector scale = eig.eigenvalues.array().rsqrt();
  return eig.eigenvectors * scale.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Diagonal effects: column j of the weights spreads |j><j| over the r effects.
std::vector<ComplexMatrix> diagonal_povm(Eigen::Index n, std::size_t r, Rng& rng) {
  const auto rows = static_cast<Eigen::Index>(r);
  RealMatrix w(rows, n);
  for (Eigen::Index j = 0; j < n; ++j) w.col(j) = random_stochastic(rows, rng, 0.5).matrix().col(0);
  // Every effect needs some support.
  for (Eigen::Index k = 0; k < rows; ++k) {
    if (w.row(k).maxCoeff() > 0.0) continue;
    const Eigen::Index j = uniform_index(0, n - 1, rng);
    w(k, j) = 0.5;
    w.col(j) /= w.col(j).sum();
  }
  std::vector<ComplexMatrix> effects;
  for (Eigen::Index k = 0; k < rows; ++k) {
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    f.diagonal() = w.row(k).transpose().cast<Complex>();
    effects.push_back(std::move(f));
  }
  return effects;
}

ComplexMatrix random_diagonal_density(Eigen::Index n, Rng& rng) {
  const RealVector column = random_stochastic(n, rng, 0.6).matrix().col(0);
  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  r.diagonal() = column.cast<Complex>();
  return r;
}

}  // namespace

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  return hermitian_part(gaussian_matrix(n, n, rng));
}

ComplexMatrix random_psd(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  const ComplexMatrix h = gaussian_matrix(n, rank, rng);
  return hermitian_part(h * h.adjoint());
}

ComplexVector random_pure_state(Eigen::Index n, Rng& rng) {
  ComplexVector v = gaussian_matrix(n, 1, rng).col(0);
  return v / v.norm();
}

channel::DensityMatrix random_density(Eigen::Index n, Rng& rng, Eigen::Index rank) {
  if (rank <= 0) rank = n;
  ComplexMatrix r = random_psd(n, rank, rng);
  r /= r.trace().real();
  return channel::DensityMatrix::create(std::move(r));
}

std::vector<ComplexMatrix> random_povm(Eigen::Index n, std::size_t r, Rng& rng,
                                       Eigen::Index max_rank) {
  if (max_rank <= 0) max_rank = n;
  std::vector<Eigen::Index> ranks(r);
  for (auto& k : ranks) k = uniform_index(1, max_rank, rng);
  // A singular sum would leave part of the space unmeasured.
  while (std::accumulate(ranks.begin(), ranks.end(), Eigen::Index{0}) < n) {
    auto& k = ranks[static_cast<std::size_t>(uniform_index(0, static_cast<Eigen::Index>(r) - 1, rng))];
    if (k < n) ++k;
  }

  std::vector<ComplexMatrix> parts;
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (auto k : ranks) {
    parts.push_back(random_psd(n, k, rng));
    total += parts.back();
  }
  const auto eig = eig_hermitian(total);
  if (eig.eigenvalues(n - 1) <= 1e-12 * eig.eigenvalues(0)) {
    for (auto& a : parts) a += kRegularisation * ComplexMatrix::Identity(n, n);
    total += static_cast<double>(r) * kRegularisation * ComplexMatrix::Identity(n, n);
  }
  const ComplexMatrix whitening = inverse_sqrt(total);
  for (auto& a : parts) a = hermitian_part(whitening * a * whitening);
  return parts;
}

channel::HolevoForm random_holevo_form(Eigen::Index n, std::size_t r, Rng& rng,
                                       FormShape shape) {
  const Eigen::Index state_rank = shape.max_state_rank > 0 ? shape.max_state_rank : n;
  auto effects = random_povm(n, r, rng, shape.max_effect_rank);
  std::vector<channel::HolevoPair> pairs;
  for (auto& f : effects) {
    const auto rho = random_density(n, rng, uniform_index(1, state_rank, rng));
    pairs.push_back({std::move(f), rho.value()});
  }
  return channel::HolevoForm::create(n, std::move(pairs));
}

stochastic::StochasticMatrix random_stochastic(Eigen::Index r, Rng& rng, double zero_probability,
                                               bool nonzero_rows) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealMatrix s(r, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) {
      s(i, j) = unit(rng) < zero_probability ? 0.0 : 0.05 + unit(rng);
    }
    if (s.col(j).maxCoeff() == 0.0) s(uniform_index(0, r - 1, rng), j) = 1.0;
  }
  if (nonzero_rows) {
    for (Eigen::Index i = 0; i < r; ++i) {
      if (s.row(i).maxCoeff() == 0.0) s(i, uniform_index(0, r - 1, rng)) = 0.05 + unit(rng);
    }
  }
  for (Eigen::Index j = 0; j < r; ++j) s.col(j) /= s.col(j).sum();
  return stochastic::StochasticMatrix::create(std::move(s));
}

channel::HolevoForm random_structured_form(Eigen::Index n, std::size_t r, Rng& rng) {
  switch (uniform_index(0, 3, rng)) {
    case 0:
      return random_holevo_form(n, r, rng);
    case 1:
      return random_holevo_form(n, r, rng, {1, 1});
    case 2: {
      auto effects = diagonal_povm(n, r, rng);
      std::vector<channel::HolevoPair> pairs;
      for (auto& f : effects) pairs.push_back({std::move(f), random_diagonal_density(n, rng)});
      return channel::HolevoForm::create(n, std::move(pairs));
    }
    default: {
      // States confined to a random subspace of dimension n - 1 (or n when
      // n = 1), so sum_k R_k is singular.
      const Eigen::Index sub = std::max<Eigen::Index>(1, n - 1);
      Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(n, n, rng));
      const ComplexMatrix basis = ComplexMatrix(qr.householderQ()).leftCols(sub);
      auto effects = random_povm(n, r, rng);
      std::vector<channel::HolevoPair> pairs;
      for (auto& f : effects) {
        const ComplexMatrix inner = random_density(sub, rng).value();
        ComplexMatrix state = hermitian_part(basis * inner * basis.adjoint());
        state /= state.trace().real();
        pairs.push_back({std::move(f), std::move(state)});
      }
      return channel::HolevoForm::create(n, std::move(pairs));
    }
  }
}

}  // namespace ebc::sampling
