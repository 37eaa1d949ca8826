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

#include "ebc/primitivity.hpp"

#include <algorithm>
#include <string>

namespace ebc::primitivity {

namespace {

// Kernel of a sum of PSD operators; the empty sum is the zero operator, whose
// kernel is the whole space.
ComplexMatrix kernel_of_sum(const ComplexMatrix& sum, bool empty, const Tolerances& tol) {
  if (empty) return ComplexMatrix::Identity(sum.rows(), sum.cols());
  return kernel_psd(sum, tol);
}

class PartitionSearch {
 public:
  PartitionSearch(const HolevoForm& phi, const HolevoForm& iterated, const Tolerances& tol)
      : phi_(phi), iterated_(iterated), tol_(tol), in_subset_(phi.size(), false) {}

  std::optional<Witness> run() {
    const Eigen::Index n = phi_.dim();
    return visit(0, ComplexMatrix::Zero(n, n));
  }

 private:
  // Preorder over subsets extended only by indices >= next, which visits T in
  // lexicographic order of their sorted index lists.
  std::optional<Witness> visit(std::size_t next, const ComplexMatrix& state_sum) {
    const ComplexMatrix state_kernel = kernel_of_sum(state_sum, subset_.empty(), tol_);
    // Kernels only shrink as T grows: nothing below this node can succeed.
    if (state_kernel.cols() == 0) return std::nullopt;

    const Eigen::Index n = phi_.dim();
    ComplexMatrix effect_sum = ComplexMatrix::Zero(n, n);
    bool complement_empty = true;
    for (std::size_t k = 0; k < phi_.size(); ++k) {
      if (in_subset_[k]) continue;
      effect_sum += iterated_.effect(k);
      complement_empty = false;
    }
    const ComplexMatrix effect_kernel = kernel_of_sum(effect_sum, complement_empty, tol_);
    if (effect_kernel.cols() > 0) {
      // Trailing kernel columns belong to the smallest eigenvalues.
      return Witness{subset_, effect_kernel.rightCols<1>(), state_kernel.rightCols<1>()};
    }

    for (std::size_t k = next; k < phi_.size(); ++k) {
      subset_.push_back(k);
      in_subset_[k] = true;
      auto found = visit(k + 1, state_sum + phi_.state(k));
      in_subset_[k] = false;
      subset_.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  const HolevoForm& phi_;
  const HolevoForm& iterated_;
  const Tolerances& tol_;
  std::vector<std::size_t> subset_;
  std::vector<bool> in_subset_;
};

}  // namespace

bool sum_R_positive_definite(const HolevoForm& phi, const Tolerances& tol) {
  ComplexMatrix sum = ComplexMatrix::Zero(phi.dim(), phi.dim());
  for (const auto& pair : phi.pairs()) sum += pair.state;
  return is_pd(sum, tol);
}

PositivityCheck strictly_positive_at(const HolevoForm& phi, std::size_t m,
                                     const Options& options) {
  if (phi.size() > options.subset_cap) {
    throw Error(ErrorKind::SubsetCapExceeded,
                "r = " + std::to_string(phi.size()) + " exceeds subset cap " +
                    std::to_string(options.subset_cap));
  }
  const HolevoForm iterated = channel::iterated_form(phi, m);
  PartitionSearch search(phi, iterated, options.tol);
  PositivityCheck out;
  out.witness = search.run();
  out.positive = !out.witness.has_value();
  return out;
}

bool is_primitive_channel(const HolevoForm& phi, const Tolerances& tol) {
  return stochastic::is_primitive(channel::stochastic_rep(phi, tol), tol) &&
         sum_R_positive_definite(phi, tol);
}

ChannelPrimitivityReport channel_primitivity_index(const HolevoForm& phi,
                                                   const Options& options) {
  const auto& tol = options.tol;
  ChannelPrimitivityReport report;
  const auto s = channel::stochastic_rep(phi, tol);
  const auto verdict = stochastic::primitivity_index(s, tol);
  report.s_primitive = verdict.primitive;
  report.p_index = verdict.index;
  report.sum_R_pd = sum_R_positive_definite(phi, tol);
  report.channel_primitive = report.s_primitive && report.sum_R_pd;
  if (!report.channel_primitive) return report;

  const std::uint64_t p = *verdict.index;
  const std::uint64_t low = options.full_range ? 1 : std::max<std::uint64_t>(1, p - 1);
  const std::uint64_t high = p + 1;
  report.q_window_low = low;
  report.q_window_high = high;

  if (phi.size() > options.subset_cap) {
    report.q_method = QMethod::BoundsOnly;
    return report;
  }

  for (std::uint64_t m = low; m <= high; ++m) {
    if (strictly_positive_at(phi, m, options).positive) {
      report.q_index = m;
      break;
    }
  }
  if (!report.q_index) {
    report.window_violation = true;
    return report;
  }

  const std::uint64_t q = *report.q_index;
  if (q < high) report.monotone_after_q = strictly_positive_at(phi, q + 1, options).positive;
  const std::uint64_t diff = q > p ? q - p : p - q;
  report.bound_abs_diff_ok = diff <= 1;
  const std::uint64_t r = phi.size();
  report.holevo_rank_bound_ok = q <= r * r - 2 * r + 3;
  return report;
}

HolevoRankBounds holevo_rank_bounds(const HolevoForm& phi, const Tolerances& tol) {
  HolevoRankBounds out;
  out.lower = numerical_rank(channel::natural_rep(phi), tol.zero_eig_tol);
  out.upper = phi.size();
  const std::uint64_t r = phi.size();
  out.q_upper_from_rank = r * r - 2 * r + 3;
  return out;
}

WielandtComparison quantum_wielandt_comparison(const HolevoForm& phi,
                                               std::uint64_t kraus_count) {
  const auto n2 = static_cast<std::int64_t>(phi.dim() * phi.dim());
  const auto d = static_cast<std::int64_t>(kraus_count);
  if (d < 1 || d > n2) {
    throw Error(ErrorKind::InvalidArgument, "Kraus count must lie in 1..n^2");
  }
  const auto r = static_cast<std::int64_t>(phi.size());
  return {r * r - 2 * r + 3, (n2 - d + 1) * n2};
}

double witness_value(const HolevoForm& phi, std::size_t m, const Witness& witness) {
  const ComplexMatrix out = channel::apply_power(phi, outer(witness.psi), m);
  return (witness.phi.adjoint() * out * witness.phi)(0, 0).real();
}

}  // namespace ebc::primitivity
