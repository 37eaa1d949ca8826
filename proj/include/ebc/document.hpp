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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ebc/channel.hpp"
#include "ebc/stochastic.hpp"

/// JSON interchange formats used by the command line tool.
///
/// Channel document:
///   {"format_version": "1.0", "n": 2,
///    "pairs": [{"F": M, "R": M}, ...], "metadata": {"key": "value"}}
/// where M is an n x n array of [re, im] pairs.
///
/// Stochastic matrix file: {"r": 2, "entries": [[0.5, 0.5], [0.5, 0.5]]}
/// State file:             {"n": 2, "rho": M}
/// Kraus file:             {"n": 2, "kraus": [M, ...]}
namespace ebc::cli {

using json = nlohmann::json;

inline constexpr std::string_view kFormatVersion = "1.0";

struct ChannelDocument {
  std::string format_version{kFormatVersion};
  Eigen::Index n = 0;
  std::vector<channel::HolevoPair> pairs;
  std::map<std::string, std::string> metadata;
};

json matrix_to_json(const ComplexMatrix& m);
json matrix_to_json(const RealMatrix& m);
/// Throws SchemaViolation unless `j` is an n x n array of [re, im] pairs.
ComplexMatrix matrix_from_json(const json& j, Eigen::Index n, const std::string& what);

/// Parses JSON text; throws SyntaxError carrying the byte offset.
json parse_json(std::string_view text);

/// Schema-level parse without channel validation. Throws SyntaxError or
/// SchemaViolation (with pair index where relevant).
ChannelDocument parse_document(std::string_view text);

/// Parse and validate. Validation errors keep the offending pair index.
channel::HolevoForm parse_channel_document(std::string_view text, const Tolerances& tol = {});

ChannelDocument to_document(const channel::HolevoForm& phi,
                            std::map<std::string, std::string> metadata = {});
json document_to_json(const ChannelDocument& doc);
std::string emit_document(const ChannelDocument& doc);

stochastic::StochasticMatrix parse_stochastic_file(std::string_view text,
                                                   const Tolerances& tol = {});
json stochastic_to_json(const stochastic::StochasticMatrix& s);

channel::DensityMatrix parse_state_file(std::string_view text, const Tolerances& tol = {});
json state_to_json(const channel::DensityMatrix& rho);

std::vector<ComplexMatrix> parse_kraus_file(std::string_view text);

json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const json& j);

/// Reads a whole file; throws InvalidArgument if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace ebc::cli
