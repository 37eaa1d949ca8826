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

// Command line front end: build, analyze, iterate and verify entanglement
// breaking channels stored as JSON channel documents.

#include <iostream>

#include <CLI11.hpp>

#include "ebc/commands.hpp"

int main(int argc, char** argv) {
  using namespace ebc::cli;

  CLI::App app{"Entanglement breaking channels in Holevo form: stochastic representations "
               "and primitivity"};
  app.require_subcommand(1);

  BuildArgs build;
  std::int64_t build_n = 0;
  auto* build_cmd = app.add_subcommand("build", "Emit a channel document from a builder");
  build_cmd->add_option("kind", build.kind, "depolarizing | diag | qc | from-kraus")->required();
  auto* n_opt = build_cmd->add_option("--n", build_n, "System dimension");
  build_cmd->add_option("--stochastic", build.stochastic_file, "Stochastic matrix file (qc)");
  build_cmd->add_option("--kraus", build.kraus_file, "Rank-one Kraus file (from-kraus)");
  build_cmd->add_option("-o,--output", build.output_file, "Output file (default stdout)");

  AnalyzeArgs analyze;
  double psd_tol = 0.0;
  double zero_eig_tol = 0.0;
  double match_tol = 0.0;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the full analysis pipeline");
  analyze_cmd->add_option("file", analyze.channel_file, "Channel document")->required();
  analyze_cmd->add_option("--format", analyze.format, "text | machine");
  auto* psd_opt = analyze_cmd->add_option("--psd-tol", psd_tol, "PSD tolerance");
  auto* zero_opt = analyze_cmd->add_option("--zero-eig-tol", zero_eig_tol, "Zero eigenvalue tolerance");
  auto* match_opt = analyze_cmd->add_option("--match-tol", match_tol, "Spectrum matching tolerance");

  IterateArgs iterate;
  auto* iterate_cmd = app.add_subcommand("iterate", "Apply the channel repeatedly to a state");
  iterate_cmd->add_option("file", iterate.channel_file, "Channel document")->required();
  iterate_cmd->add_option("--state", iterate.state_file, "State file")->required();
  iterate_cmd->add_option("--steps", iterate.steps, "Number of applications")->required();

  VerifyArgs verify;
  std::int64_t random_count = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_option("file", verify.channel_file, "Channel document");
  auto* random_opt = verify_cmd->add_option("--random", random_count, "Number of random channels");
  verify_cmd->add_option("--seed", verify.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (build_cmd->parsed()) {
    if (*n_opt) build.n = build_n;
    return run_build(build, std::cout, std::cerr);
  }
  if (analyze_cmd->parsed()) {
    if (*psd_opt) analyze.psd_tol = psd_tol;
    if (*zero_opt) analyze.zero_eig_tol = zero_eig_tol;
    if (*match_opt) analyze.match_tol = match_tol;
    return run_analyze(analyze, std::cout, std::cerr);
  }
  if (iterate_cmd->parsed()) return run_iterate(iterate, std::cout, std::cerr);
  if (verify_cmd->parsed()) {
    if (*random_opt) verify.random_count = random_count;
    return run_verify(verify, std::cout, std::cerr);
  }
  return kExitInputError;
}
