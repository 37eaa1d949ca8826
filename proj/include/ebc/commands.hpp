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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ebc/document.hpp"
#include "ebc/primitivity.hpp"

/// Subcommands of the `ebchannel` tool. Each `run_*` function writes to the
/// given streams and returns the process exit code.
namespace ebc::cli {

/// Stable exit-code contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitConsistencyFailure = 1,
  kExitInputError = 2,
};

// ---------------------------------------------------------------------------
// build

struct BuildArgs {
  std::string kind;  // depolarizing | diag | qc | from-kraus
  std::optional<std::int64_t> n;
  std::string stochastic_file;
  std::string kraus_file;
  std::string output_file;  // empty: standard output
};

/// Throws ebc::Error for unusable parameters or builder failures.
ChannelDocument build_document(const BuildArgs& args);
int run_build(const BuildArgs& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// analyze

struct AnalysisReport {
  RealMatrix stochastic_matrix;
  double column_sum_residual = 0.0;
  channel::SpectrumComparison spectrum;
  primitivity::ChannelPrimitivityReport primitivity;
  ComplexMatrix fixed_point;
  RealVector stationary;
  bool fixed_point_unique = false;
  double fixed_point_residual = 0.0;
  double factorization_residual_ab = 0.0;
  double factorization_residual_ba = 0.0;
  primitivity::HolevoRankBounds rank_bounds;
  Tolerances tolerances;
  std::size_t subset_cap = 20;
  /// Internal consistency checks that failed (empty when all hold).
  std::vector<std::string> failures;
};

AnalysisReport analyze(const channel::HolevoForm& phi, const primitivity::Options& options = {});
json report_to_json(const AnalysisReport& report);
std::string report_to_text(const AnalysisReport& report);

struct AnalyzeArgs {
  std::string channel_file;
  std::string format = "text";  // text | machine
  std::optional<double> psd_tol;
  std::optional<double> zero_eig_tol;
  std::optional<double> match_tol;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// iterate

struct IterationRecord {
  std::size_t step = 0;
  ComplexMatrix state;             // Phi^step(rho)
  double distance_to_fixed_point = 0.0;
  /// Phi^step(rho) = sum_k weights_k R_k with weights = S^{step-1} c,
  /// c_k = tr(F_k rho). Absent at step 0.
  std::optional<RealVector> weights;
  double weights_residual = 0.0;   // max |Phi^step(rho) - sum_k weights_k R_k|
};

struct Trajectory {
  channel::FixedPoint fixed_point;
  std::vector<IterationRecord> records;  // steps 0..m
};

Trajectory iterate(const channel::HolevoForm& phi, const channel::DensityMatrix& rho,
                   std::size_t steps, const Tolerances& tol = {});

struct IterateArgs {
  std::string channel_file;
  std::string state_file;
  std::int64_t steps = 1;
};

/// One JSON object per line: a fixed-point header, then one record per step.
int run_iterate(const IterateArgs& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string channel;  // label of the channel the check ran on
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifySettings {
  primitivity::Options options;
  std::uint64_t seed = 0;
  std::size_t random_states = 20;
  std::size_t random_operators = 50;
  std::size_t pure_state_samples = 500;
};

/// Every channel-level invariant on one form.
std::vector<CheckResult> verify_channel(const channel::HolevoForm& phi, const std::string& label,
                                        const VerifySettings& settings);
/// Matrix-primitive and stochastic-matrix invariants on random inputs.
std::vector<CheckResult> verify_primitives(const VerifySettings& settings);

struct VerifyArgs {
  std::string channel_file;  // empty when random
  std::optional<std::int64_t> random_count;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace ebc::cli
