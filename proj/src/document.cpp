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

#include "ebc/document.hpp"

#include <fstream>
#include <sstream>

namespace ebc::cli {

namespace {

[[noreturn]] void schema_error(const std::string& message,
                               std::optional<std::size_t> pair = std::nullopt) {
  throw Error(ErrorKind::SchemaViolation, message, pair);
}

const json& require_field(const json& obj, const char* name, const std::string& context) {
  if (!obj.is_object() || !obj.contains(name)) {
    schema_error(context + ": missing field '" + name + "'");
  }
  return obj.at(name);
}

Eigen::Index require_dimension(const json& obj, const char* name, const std::string& context) {
  const json& v = require_field(obj, name, context);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    schema_error(context + ": '" + name + "' must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<std::int64_t>());
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, Eigen::Index n, const std::string& what) {
  const auto bad = [&](const std::string& detail) {
    schema_error(what + ": " + detail);
  };
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    bad("expected " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      bad("row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& entry = row[static_cast<std::size_t>(k)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        bad("entry (" + std::to_string(i) + "," + std::to_string(k) + ") must be [re, im]");
      }
      m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, e.what(), std::nullopt, e.byte);
  }
}

ChannelDocument parse_document(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_object()) schema_error("document must be a JSON object");

  ChannelDocument doc;
  const json& version = require_field(root, "format_version", "document");
  if (!version.is_string()) schema_error("format_version must be a string");
  doc.format_version = version.get<std::string>();
  if (doc.format_version.rfind("1.", 0) != 0) {
    schema_error("unsupported format_version '" + doc.format_version + "'");
  }
  doc.n = require_dimension(root, "n", "document");

  const json& pairs = require_field(root, "pairs", "document");
  if (!pairs.is_array() || pairs.empty()) schema_error("'pairs' must be a nonempty array");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const json& p = pairs[k];
    if (!p.is_object() || !p.contains("F") || !p.contains("R")) {
      schema_error("pair must be an object with fields F and R", k);
    }
    try {
      doc.pairs.push_back({matrix_from_json(p.at("F"), doc.n, "F"),
                           matrix_from_json(p.at("R"), doc.n, "R")});
    } catch (const Error& e) {
      throw e.at_pair(k);
    }
  }

  if (root.contains("metadata")) {
    const json& meta = root.at("metadata");
    if (!meta.is_object()) schema_error("metadata must be an object of strings");
    for (const auto& [key, value] : meta.items()) {
      if (!value.is_string()) schema_error("metadata value for '" + key + "' is not a string");
      doc.metadata.emplace(key, value.get<std::string>());
    }
  }
  return doc;
}

channel::HolevoForm parse_channel_document(std::string_view text, const Tolerances& tol) {
  ChannelDocument doc = parse_document(text);
  return channel::HolevoForm::create(doc.n, std::move(doc.pairs), tol);
}

ChannelDocument to_document(const channel::HolevoForm& phi,
                            std::map<std::string, std::string> metadata) {
  ChannelDocument doc;
  doc.n = phi.dim();
  doc.pairs = phi.pairs();
  doc.metadata = std::move(metadata);
  return doc;
}

json document_to_json(const ChannelDocument& doc) {
  json pairs = json::array();
  for (const auto& [f, r] : doc.pairs) {
    pairs.push_back({{"F", matrix_to_json(f)}, {"R", matrix_to_json(r)}});
  }
  json root = {{"format_version", doc.format_version}, {"n", doc.n}, {"pairs", std::move(pairs)}};
  if (!doc.metadata.empty()) root["metadata"] = doc.metadata;
  return root;
}

std::string emit_document(const ChannelDocument& doc) {
  return document_to_json(doc).dump(2) + "\n";
}

stochastic::StochasticMatrix parse_stochastic_file(std::string_view text, const Tolerances& tol) {
  const json root = parse_json(text);
  const Eigen::Index r = require_dimension(root, "r", "stochastic file");
  const json& entries = require_field(root, "entries", "stochastic file");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != r) {
    schema_error("stochastic file: 'entries' must have r rows");
  }
  std::vector<std::vector<double>> rows;
  for (const json& row : entries) {
    if (!row.is_array()) schema_error("stochastic file: rows must be arrays");
    std::vector<double> values;
    for (const json& v : row) {
      if (!v.is_number()) schema_error("stochastic file: entries must be numbers");
      values.push_back(v.get<double>());
    }
    rows.push_back(std::move(values));
  }
  return stochastic::make_stochastic(rows, r, tol);
}

json stochastic_to_json(const stochastic::StochasticMatrix& s) {
  return {{"r", s.size()}, {"entries", matrix_to_json(s.matrix())}};
}

channel::DensityMatrix parse_state_file(std::string_view text, const Tolerances& tol) {
  const json root = parse_json(text);
  const Eigen::Index n = require_dimension(root, "n", "state file");
  return channel::DensityMatrix::create(
      matrix_from_json(require_field(root, "rho", "state file"), n, "rho"), tol);
}

json state_to_json(const channel::DensityMatrix& rho) {
  return {{"n", rho.dim()}, {"rho", matrix_to_json(rho.value())}};
}

std::vector<ComplexMatrix> parse_kraus_file(std::string_view text) {
  const json root = parse_json(text);
  const Eigen::Index n = require_dimension(root, "n", "kraus file");
  const json& list = require_field(root, "kraus", "kraus file");
  if (!list.is_array() || list.empty()) schema_error("kraus file: 'kraus' must be a nonempty array");
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    out.push_back(matrix_from_json(list[k], n, "kraus[" + std::to_string(k) + "]"));
  }
  return out;
}

json tolerances_to_json(const Tolerances& tol) {
  return {{"psd_tol", tol.psd_tol},
          {"zero_eig_tol", tol.zero_eig_tol},
          {"match_tol", tol.match_tol},
          {"stochastic_tol", tol.stochastic_tol}};
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances tol;
  const auto read = [&](const char* name, double& field) {
    if (!j.contains(name)) return;
    if (!j.at(name).is_number()) schema_error(std::string("tolerance '") + name + "' must be a number");
    field = j.at(name).get<double>();
  };
  read("psd_tol", tol.psd_tol);
  read("zero_eig_tol", tol.zero_eig_tol);
  read("match_tol", tol.match_tol);
  read("stochastic_tol", tol.stochastic_tol);
  tol.validate();
  return tol;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace ebc::cli
