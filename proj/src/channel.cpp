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

#include "ebc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace ebc::channel {

namespace {

// Below this entry size an effect counts as the zero operator.
double zero_effect_threshold(const Tolerances& tol) {
  return std::max(tol.stochastic_tol, 64 * std::numeric_limits<double>::epsilon());
}

// tr(a b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.transpose().cwiseProduct(b).sum();
}

void check_density(const ComplexMatrix& r, const Tolerances& tol) {
  if (!r.allFinite()) throw Error(ErrorKind::NotDensity, "non-finite entries");
  if (!is_hermitian(r, tol)) throw Error(ErrorKind::NotDensity, "not Hermitian");
  if (!is_psd(r, tol)) throw Error(ErrorKind::NotDensity, "not positive semidefinite");
  const Complex t = r.trace();
  if (std::abs(t - Complex(1.0)) > tol.stochastic_tol) {
    throw Error(ErrorKind::NotDensity, "trace " + std::to_string(t.real()) + " differs from 1");
  }
}

}  // namespace

DensityMatrix DensityMatrix::create(ComplexMatrix value, const Tolerances& tol) {
  require_square(value, "density matrix");
  check_density(value, tol);
  return DensityMatrix(std::move(value));
}

DensityMatrix trusted_density(ComplexMatrix value) { return DensityMatrix(std::move(value)); }

HolevoForm HolevoForm::create(Eigen::Index n, std::vector<HolevoPair> pairs,
                              const Tolerances& tol) {
  tol.validate();
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "dimension must be positive");
  if (pairs.empty()) throw Error(ErrorKind::InvalidArgument, "a Holevo form needs r >= 1 pairs");

  ComplexMatrix effect_sum = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [f, r] = pairs[k];
    if (f.rows() != n || f.cols() != n || r.rows() != n || r.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "operators must be " + std::to_string(n) + "x" +
                                                    std::to_string(n), k);
    }
    if (!f.allFinite()) throw Error(ErrorKind::NotPOVM, "effect has non-finite entries", k);
    if (max_abs(f) <= zero_effect_threshold(tol)) {
      throw Error(ErrorKind::ZeroEffect, "effect is the zero operator", k);
    }
    if (!is_hermitian(f, tol) || !is_psd(f, tol)) {
      throw Error(ErrorKind::NotPOVM, "effect is not positive semidefinite", k);
    }
    try {
      check_density(r, tol);
    } catch (const Error& e) {
      throw e.at_pair(k);
    }
    effect_sum += f;
  }
  const double deviation = max_abs(effect_sum - ComplexMatrix::Identity(n, n));
  if (deviation > tol.stochastic_tol) {
    throw Error(ErrorKind::NotPOVM,
                "effects sum to identity only within " + std::to_string(deviation));
  }
  return HolevoForm(n, std::move(pairs));
}

// ---------------------------------------------------------------------------
// Action

ComplexMatrix apply_linear(const HolevoForm& phi, const ComplexMatrix& x) {
  const Eigen::Index n = phi.dim();
  if (x.rows() != n || x.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "input must be " + std::to_string(n) + "x" +
                                                  std::to_string(n));
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& [f, r] : phi.pairs()) out += trace_product(f, x) * r;
  return out;
}

DensityMatrix apply(const HolevoForm& phi, const DensityMatrix& rho) {
  return trusted_density(apply_linear(phi, rho.value()));
}

ComplexMatrix apply_power(const HolevoForm& phi, const ComplexMatrix& x, std::size_t m) {
  ComplexMatrix out = x;
  for (std::size_t t = 0; t < m; ++t) out = apply_linear(phi, out);
  return out;
}

// ---------------------------------------------------------------------------
// Representations

ComplexMatrix natural_rep(const HolevoForm& phi) {
  const Eigen::Index n = phi.dim();
  ComplexMatrix out(n * n, n * n);
  // Column (i, j) is vec(Phi(E_ij)); row (i1, j1) of it is tr(E_{j1 i1} Phi(E_ij)).
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.col(i * n + j) = vec(apply_linear(phi, matrix_unit(n, i, j)));
    }
  }
  return out;
}

ComplexMatrix choi(const HolevoForm& phi) {
  const Eigen::Index n = phi.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const ComplexMatrix unit = matrix_unit(n, i, j);
      out += tensor(unit, apply_linear(phi, unit));
    }
  }
  return out;
}

ComplexMatrix choi_from_pairs(const HolevoForm& phi) {
  const Eigen::Index n = phi.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& [f, r] : phi.pairs()) out += tensor(f.transpose(), r);
  return out;
}

Factorization factorization(const HolevoForm& phi) {
  const Eigen::Index n = phi.dim();
  const auto r = static_cast<Eigen::Index>(phi.size());
  Factorization out{ComplexMatrix(n * n, r), ComplexMatrix(r, n * n)};
  for (Eigen::Index k = 0; k < r; ++k) {
    const auto& pair = phi.pairs()[static_cast<std::size_t>(k)];
    out.a.col(k) = vec(pair.state);
    out.b.row(k) = vec(pair.effect.transpose()).transpose();
  }
  return out;
}

RealMatrix transition_entries(const HolevoForm& phi) {
  const auto r = static_cast<Eigen::Index>(phi.size());
  RealMatrix s(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      s(i, j) = trace_product(phi.effect(static_cast<std::size_t>(i)),
                              phi.state(static_cast<std::size_t>(j)))
                    .real();
    }
  }
  return s;
}

StochasticMatrix stochastic_rep(const HolevoForm& phi, const Tolerances& tol) {
  return StochasticMatrix::create(transition_entries(phi), tol);
}

HolevoForm iterated_form(const HolevoForm& phi, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "iterated_form requires m >= 1");
  const RealMatrix s = transition_entries(phi);
  const auto r = s.rows();
  RealMatrix power = RealMatrix::Identity(r, r);
  for (std::size_t t = 1; t < m; ++t) power = power * s;

  const Eigen::Index n = phi.dim();
  std::vector<HolevoPair> pairs;
  pairs.reserve(phi.size());
  for (Eigen::Index k = 0; k < r; ++k) {
    ComplexMatrix g = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < r; ++j) {
      const double w = power(k, j);
      if (w != 0.0) g += w * phi.effect(static_cast<std::size_t>(j));
    }
    pairs.push_back({std::move(g), phi.state(static_cast<std::size_t>(k))});
  }
  return HolevoForm(n, std::move(pairs));
}

FixedPoint fixed_point(const HolevoForm& phi, const Tolerances& tol) {
  const auto s = stochastic_rep(phi, tol);
  auto stationary = stochastic::stationary_distribution(s, tol);
  const Eigen::Index n = phi.dim();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    rho += stationary.pi(static_cast<Eigen::Index>(k)) * phi.state(k);
  }
  const double residual = max_abs(apply_linear(phi, rho) - rho);
  return {trusted_density(std::move(rho)), std::move(stationary.pi), stationary.unique, residual};
}

// ---------------------------------------------------------------------------
// Spectra

namespace {

constexpr std::size_t kExactPairingLimit = 32;

// Kuhn's augmenting path search restricted to distances <= limit.
bool augment(std::size_t u, double limit, const std::vector<std::vector<double>>& dist,
             std::vector<int>& match_b, std::vector<char>& seen) {
  for (std::size_t v = 0; v < match_b.size(); ++v) {
    if (seen[v] || dist[u][v] > limit) continue;
    seen[v] = 1;
    if (match_b[v] < 0 ||
        augment(static_cast<std::size_t>(match_b[v]), limit, dist, match_b, seen)) {
      match_b[v] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

// Perfect matching of every row into distinct columns with distances <= limit.
std::optional<std::vector<int>> match_under(double limit,
                                            const std::vector<std::vector<double>>& dist,
                                            std::size_t cols) {
  std::vector<int> match_b(cols, -1);
  for (std::size_t u = 0; u < dist.size(); ++u) {
    std::vector<char> seen(cols, 0);
    if (!augment(u, limit, dist, match_b, seen)) return std::nullopt;
  }
  return match_b;
}

// Requires a.size() <= b.size().
Pairing pair_ordered(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Pairing out;
  if (a.empty()) return out;
  std::vector<std::vector<double>> dist(a.size(), std::vector<double>(b.size()));
  std::vector<double> candidates;
  candidates.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      dist[i][j] = std::abs(a[i] - b[j]);
      candidates.push_back(dist[i][j]);
    }
  }

  if (b.size() <= kExactPairingLimit) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // Smallest threshold admitting a full matching.
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (match_under(candidates[mid], dist, b.size())) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const auto matching = *match_under(candidates[lo], dist, b.size());
    for (std::size_t v = 0; v < matching.size(); ++v) {
      if (matching[v] < 0) continue;
      const auto u = static_cast<std::size_t>(matching[v]);
      out.pairs.emplace_back(u, v);
      out.max_distance = std::max(out.max_distance, dist[u][v]);
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
  }

  // Greedy: repeatedly take the closest remaining pair.
  std::vector<char> used_a(a.size(), 0);
  std::vector<char> used_b(b.size(), 0);
  for (std::size_t step = 0; step < a.size(); ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used_b[j] && dist[i][j] < best) {
          best = dist[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = 1;
    out.pairs.emplace_back(bi, bj);
    out.max_distance = std::max(out.max_distance, best);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

std::vector<Complex> nonzero(const std::vector<Complex>& values, double cutoff) {
  std::vector<Complex> out;
  for (const auto& v : values) {
    if (std::abs(v) >= cutoff) out.push_back(v);
  }
  return out;
}

}  // namespace

Pairing pair_multisets(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() <= b.size()) return pair_ordered(a, b);
  Pairing swapped = pair_ordered(b, a);
  for (auto& [i, j] : swapped.pairs) std::swap(i, j);
  std::sort(swapped.pairs.begin(), swapped.pairs.end());
  return swapped;
}

SpectrumComparison compare_nonzero_spectrum(const HolevoForm& phi, const Tolerances& tol) {
  SpectrumComparison out;
  out.channel_nonzero = nonzero(eig_general(natural_rep(phi)), tol.zero_eig_tol);
  out.matrix_nonzero = nonzero(eig_general(stochastic_rep(phi, tol).matrix()), tol.zero_eig_tol);
  const Pairing pairing = pair_multisets(out.channel_nonzero, out.matrix_nonzero);
  out.max_pair_distance = pairing.max_distance;
  out.matched = out.channel_nonzero.size() == out.matrix_nonzero.size() &&
                out.max_pair_distance <= tol.match_tol;
  return out;
}

// ---------------------------------------------------------------------------
// Builders

HolevoForm depolarizing(Eigen::Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return HolevoForm::create(n, {{id, id / static_cast<double>(n)}});
}

HolevoForm map_to_diagonal(Eigen::Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::vector<HolevoPair> pairs;
  for (Eigen::Index k = 0; k < n; ++k) {
    const ComplexMatrix p = matrix_unit(n, k, k);
    pairs.push_back({p, p});
  }
  return HolevoForm::create(n, std::move(pairs));
}

HolevoForm qc_from_stochastic(const StochasticMatrix& s, const Tolerances& tol) {
  const Eigen::Index n = s.size();
  std::vector<HolevoPair> pairs;
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    f.diagonal() = s.matrix().row(k).transpose().cast<Complex>();
    pairs.push_back({std::move(f), matrix_unit(n, k, k)});
  }
  return HolevoForm::create(n, std::move(pairs), tol);
}

HolevoForm holevo_from_rank_one_kraus(const std::vector<ComplexMatrix>& kraus,
                                      const Tolerances& tol) {
  if (kraus.empty()) throw Error(ErrorKind::InvalidArgument, "no Kraus operators given");
  const Eigen::Index n = kraus.front().rows();
  ComplexMatrix completeness = ComplexMatrix::Zero(n, n);
  std::vector<HolevoPair> pairs;
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    const ComplexMatrix& v = kraus[k];
    if (v.rows() != n || v.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators must share one square shape", k);
    }
    if (numerical_rank(v, tol.zero_eig_tol) > 1) {
      throw Error(ErrorKind::KrausRankTooHigh, "Kraus operator has rank above one", k);
    }
    ComplexMatrix f = v.adjoint() * v;
    ComplexMatrix r = v * v.adjoint();
    completeness += f;
    const double weight = r.trace().real();
    if (!(weight > 0.0)) {
      throw Error(ErrorKind::ZeroEffect, "Kraus operator is zero", k);
    }
    pairs.push_back({std::move(f), r / weight});
  }
  if (max_abs(completeness - ComplexMatrix::Identity(n, n)) > tol.stochastic_tol) {
    throw Error(ErrorKind::TracePreservationViolation, "sum of V_k^* V_k differs from identity");
  }
  return HolevoForm::create(n, std::move(pairs), tol);
}

}  // namespace ebc::channel
