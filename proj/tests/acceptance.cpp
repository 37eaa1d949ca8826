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

// Acceptance gate: runs each release criterion and prints one PASS/FAIL line
// per criterion. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ebc/channel.hpp"
#include "ebc/primitivity.hpp"
#include "ebc/sampling.hpp"
#include "test_forms.hpp"

using namespace ebc;

namespace {

// Tolerances pinned by the criteria.
constexpr double kExampleTol = 1e-12;
constexpr double kStateTol = 1e-10;
constexpr double kSpectrumTol = 1e-6;
constexpr double kFactorTol = 1e-10;
constexpr double kRoundTripTol = 1e-12;
constexpr double kFixedPointTol = 1e-10;
constexpr double kConvergenceTol = 1e-6;
constexpr double kWitnessTol = 1e-8;
constexpr double kBuilderTol = 1e-10;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(ComplexMatrix(a - b)); }
double diff(const RealMatrix& a, const RealMatrix& b) { return max_abs(RealMatrix(a - b)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// A random channel of the suite together with its dimensions.
struct Sample {
  Eigen::Index n;
  std::size_t r;
  channel::HolevoForm phi;
};

std::vector<Sample> random_channels(std::size_t count, std::size_t max_pairs, std::uint64_t seed) {
  sampling::Rng rng(seed);
  std::vector<Sample> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(i % 2);
    const std::size_t r = 1 + (i / 2) % max_pairs;
    out.push_back({n, r, sampling::random_structured_form(n, r, rng)});
  }
  return out;
}

std::uint64_t holevo_q_bound(std::size_t r) { return r * r - 2 * r + 3; }

Outcome plus_minus_example() {
  const auto phi = ebc::testing::plus_minus_form();
  const auto s = channel::stochastic_rep(phi);
  const double s_err = diff(s.matrix(), RealMatrix(RealMatrix::Constant(2, 2, 0.5)));
  const auto report = primitivity::channel_primitivity_index(phi);
  sampling::Rng rng(101);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto rho = sampling::random_density(2, rng);
    worst = std::max(worst, diff(channel::apply_power(phi, rho.value(), 2),
                                 ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0)));
  }
  Outcome out;
  out.passed = s_err <= kExampleTol && report.p_index == 1U && report.q_index == 2U &&
               worst <= kStateTol;
  out.detail = "S error " + fmt(s_err) + ", p=" + std::to_string(report.p_index.value_or(0)) +
               ", q=" + std::to_string(report.q_index.value_or(0)) + ", max |Phi^2(rho) - I/2| " +
               fmt(worst);
  return out;
}

Outcome three_pair_example() {
  const auto phi = ebc::testing::three_pair_depolarizing_form();
  RealMatrix expected(3, 3);
  expected << 0.5, 0.5, 0.0, 0.0, 0.0, 0.5, 0.5, 0.5, 0.5;
  const double s_err = diff(channel::stochastic_rep(phi).matrix(), expected);
  const auto report = primitivity::channel_primitivity_index(phi);
  Outcome out;
  out.passed = s_err <= kExampleTol && report.q_index == 1U && report.p_index == 2U;
  out.detail = "S error " + fmt(s_err) + ", p=" + std::to_string(report.p_index.value_or(0)) +
               ", q=" + std::to_string(report.q_index.value_or(0));
  return out;
}

Outcome spectrum_at_scale(const std::vector<Sample>& samples) {
  Outcome out;
  double worst = 0.0;
  std::size_t mismatched = 0;
  for (const auto& sample : samples) {
    const auto c = channel::compare_nonzero_spectrum(sample.phi);
    worst = std::max(worst, c.max_pair_distance);
    if (c.channel_nonzero.size() != c.matrix_nonzero.size() || c.max_pair_distance > kSpectrumTol) {
      ++mismatched;
    }
  }
  out.passed = mismatched == 0;
  out.detail = std::to_string(samples.size()) + " forms, " + std::to_string(mismatched) +
               " mismatched, max pair distance " + fmt(worst);
  return out;
}

Outcome factorization_at_scale(const std::vector<Sample>& samples) {
  double worst_ab = 0.0;
  double worst_ba = 0.0;
  for (const auto& sample : samples) {
    const auto f = channel::factorization(sample.phi);
    worst_ab = std::max(worst_ab, diff(f.a * f.b, channel::natural_rep(sample.phi)));
    const ComplexMatrix s = channel::transition_entries(sample.phi).cast<Complex>();
    worst_ba = std::max(worst_ba, diff(ComplexMatrix(f.b * f.a), s));
  }
  Outcome out;
  out.passed = worst_ab <= kFactorTol && worst_ba <= kFactorTol;
  out.detail = "max |AB - [Phi]| " + fmt(worst_ab) + ", max |BA - S| " + fmt(worst_ba);
  return out;
}

Outcome qc_round_trip() {
  sampling::Rng rng(505);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index r = 1 + i % 8;
    const auto s = sampling::random_stochastic(r, rng, 0.4, true);
    const auto back = channel::stochastic_rep(channel::qc_from_stochastic(s));
    worst = std::max(worst, diff(back.matrix(), s.matrix()));
  }
  Outcome out;
  out.passed = worst <= kRoundTripTol;
  out.detail = "100 matrices, max error " + fmt(worst);
  return out;
}

// Sweep of strictly_positive_at over m = 1..r^2 - 2r + 3 for one channel.
struct Sweep {
  std::optional<std::uint64_t> first_positive;
  std::size_t witnesses = 0;
  double worst_witness = 0.0;
};

Sweep sweep(const channel::HolevoForm& phi) {
  Sweep out;
  const auto limit = holevo_q_bound(phi.size());
  for (std::uint64_t m = 1; m <= limit; ++m) {
    const auto check = primitivity::strictly_positive_at(phi, m);
    if (check.positive) {
      if (!out.first_positive) out.first_positive = m;
      continue;
    }
    ++out.witnesses;
    out.worst_witness = std::max(out.worst_witness, primitivity::witness_value(phi, m, *check.witness));
  }
  return out;
}

struct PrimitivityRun {
  Outcome equivalence;
  Outcome index_bounds;
  Outcome witnesses;
};

PrimitivityRun primitivity_suite(const std::vector<Sample>& samples) {
  std::size_t disagreements = 0;
  std::size_t primitive = 0;
  std::size_t bound_violations = 0;
  std::size_t witness_count = 0;
  double worst_witness = 0.0;
  for (const auto& sample : samples) {
    const auto oracle = sweep(sample.phi);
    witness_count += oracle.witnesses;
    worst_witness = std::max(worst_witness, oracle.worst_witness);

    const bool verdict = primitivity::is_primitive_channel(sample.phi);
    if (verdict != oracle.first_positive.has_value()) ++disagreements;

    const auto report = primitivity::channel_primitivity_index(sample.phi);
    if (!report.channel_primitive) continue;
    ++primitive;
    const bool ok = report.q_index && report.p_index && report.q_index == oracle.first_positive &&
                    std::max(*report.q_index, *report.p_index) -
                            std::min(*report.q_index, *report.p_index) <=
                        1 &&
                    *report.q_index <= holevo_q_bound(sample.r);
    if (!ok) ++bound_violations;
  }
  PrimitivityRun run;
  run.equivalence.passed = disagreements == 0;
  run.equivalence.detail = std::to_string(samples.size()) + " channels, " +
                           std::to_string(primitive) + " primitive, " +
                           std::to_string(disagreements) + " disagreements with the sweep";
  run.index_bounds.passed = bound_violations == 0 && primitive > 0;
  run.index_bounds.detail = std::to_string(primitive) + " primitive channels, " +
                            std::to_string(bound_violations) + " violations";
  run.witnesses.passed = worst_witness <= kWitnessTol && witness_count > 0;
  run.witnesses.detail = std::to_string(witness_count) + " witnesses, max <phi|Phi^m(psi psi*)|phi> " +
                         fmt(worst_witness);
  return run;
}

Outcome fixed_points(const std::vector<Sample>& samples) {
  sampling::Rng rng(808);
  double worst_residual = 0.0;
  std::size_t slow = 0;
  std::size_t primitive = 0;
  std::uint64_t longest = 0;
  for (const auto& sample : samples) {
    const auto fp = channel::fixed_point(sample.phi);
    worst_residual = std::max(worst_residual,
                              diff(channel::apply(sample.phi, fp.state).value(), fp.state.value()));
    if (!primitivity::is_primitive_channel(sample.phi)) continue;
    ++primitive;
    const std::uint64_t r = sample.r;
    const std::uint64_t cap = 4 * (r * r - 2 * r + 2) + 100;
    for (int k = 0; k < 20; ++k) {
      ComplexMatrix state = sampling::random_density(sample.n, rng).value();
      std::uint64_t m = 0;
      while (diff(state, fp.state.value()) > kConvergenceTol && m < cap) {
        state = channel::apply_linear(sample.phi, state);
        ++m;
      }
      longest = std::max(longest, m);
      if (diff(state, fp.state.value()) > kConvergenceTol) ++slow;
    }
  }
  Outcome out;
  out.passed = worst_residual <= kFixedPointTol && slow == 0;
  out.detail = "max residual " + fmt(worst_residual) + ", " + std::to_string(primitive) +
               " primitive channels x 20 states, " + std::to_string(slow) +
               " not converged, longest run " + std::to_string(longest) + " steps";
  return out;
}

Outcome builders() {
  const bool dep_ok = channel::stochastic_rep(channel::depolarizing(3)).matrix() == RealMatrix::Ones(1, 1);
  bool diag_ok = true;
  for (Eigen::Index n = 1; n <= 4; ++n) {
    const auto phi = channel::map_to_diagonal(n);
    diag_ok = diag_ok && channel::stochastic_rep(phi).matrix() == RealMatrix::Identity(n, n);
    diag_ok = diag_ok && (n == 1) == primitivity::is_primitive_channel(phi);
  }
  double worst = 0.0;
  for (Eigen::Index n = 2; n <= 4; ++n) {
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        kraus.push_back(matrix_unit(n, i, j) / std::sqrt(static_cast<double>(n)));
    const auto phi = channel::holevo_from_rank_one_kraus(kraus);
    const auto dep = channel::depolarizing(n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const ComplexMatrix e = matrix_unit(n, i, j);
        worst = std::max(worst, diff(channel::apply_linear(phi, e), channel::apply_linear(dep, e)));
      }
  }
  Outcome out;
  out.passed = dep_ok && diag_ok && worst <= kBuilderTol;
  out.detail = std::string("depolarizing S=(1): ") + (dep_ok ? "yes" : "no") +
               ", diagonal S=I and not primitive for n>1: " + (diag_ok ? "yes" : "no") +
               ", Kraus import max error " + fmt(worst);
  return out;
}

Outcome guarded(const std::function<Outcome()>& run) {
  try {
    return run();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  const auto large = random_channels(200, 6, 303);
  const auto small = random_channels(100, 5, 606);

  PrimitivityRun prim;
  const auto prim_outcome = guarded([&] {
    prim = primitivity_suite(small);
    return Outcome{};
  });
  if (!prim_outcome.passed) prim = {prim_outcome, prim_outcome, prim_outcome};

  const std::vector<std::pair<std::string, Outcome>> results = {
      {"plus/minus qubit example", guarded(plus_minus_example)},
      {"three-pair depolarizing example", guarded(three_pair_example)},
      {"nonzero spectrum of [Phi] equals that of S", guarded([&] { return spectrum_at_scale(large); })},
      {"factorization [Phi] = AB, S = BA", guarded([&] { return factorization_at_scale(large); })},
      {"quantum-classical round trip", guarded(qc_round_trip)},
      {"primitivity characterisation vs iterate sweep", prim.equivalence},
      {"|q - p| <= 1 and q <= r^2 - 2r + 3", prim.index_bounds},
      {"fixed points and convergence", guarded([&] { return fixed_points(small); })},
      {"builders", guarded(builders)},
      {"witness soundness", prim.witnesses},
  };

  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, outcome] = results[i];
    if (!outcome.passed) ++failed;
    std::printf("[%s] criterion %zu: %s (%s)\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                name.c_str(), outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, results.size());
  return failed == 0 ? 0 : 1;
}
