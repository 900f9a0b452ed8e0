// Copyright 2026 The Retro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "retro/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "retro/linalg.hpp"

namespace retro {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_error(where, std::string("missing field '") + key + "'");
  return *it;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) parse_error(where, "unknown field '" + it.key() + "'");
  }
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_error(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_error(where, "number is not finite");
  return x;
}

ComplexMatrix parse_matrix(const json& v, Eigen::Index dim, const std::string& where) {
  if (!v.is_array() || Eigen::Index(v.size()) != dim) {
    parse_error(where, "expected an array of " + std::to_string(dim) + " rows");
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = v[std::size_t(r)];
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || Eigen::Index(row.size()) != dim) {
      parse_error(row_where, "expected " + std::to_string(dim) + " entries");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      const json& entry = row[std::size_t(c)];
      const std::string entry_where = row_where + "[" + std::to_string(c) + "]";
      if (!entry.is_array() || entry.size() != 2) parse_error(entry_where, "expected [re, im]");
      m(r, c) = Complex(finite_number(entry[0], entry_where + ".re"),
                        finite_number(entry[1], entry_where + ".im"));
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t unsigned_integer(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) parse_error(where, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

// Runs `build`, re-raising domain violations as ValidationError tagged with `field`.
template <typename F>
auto validated(const std::string& field, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) throw;
    throw Error(ErrorCode::ValidationError, field + ": " + e.what());
  }
}

}  // namespace

ScenarioFile load_scenario(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) parse_error("document", "expected a JSON object");
  reject_unknown(root,
                 {"dimension", "ensemble", "povm", "hamiltonian", "postselection_bias", "mc", "name",
                  "description"},
                 "document");

  const json& dim_json = require_field(root, "dimension", "document");
  if (!dim_json.is_number_unsigned()) parse_error("dimension", "expected a positive integer");
  const auto dim = Eigen::Index(dim_json.get<std::uint64_t>());
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::ValidationError,
                "dimension: " + std::to_string(dim) + " outside [1, " + std::to_string(kMaxDim) + "]");
  }

  std::string name;
  if (auto it = root.find("name"); it != root.end()) {
    if (!it->is_string()) parse_error("name", "expected a string");
    name = it->get<std::string>();
  }
  if (auto it = root.find("description"); it != root.end() && !it->is_string()) {
    parse_error("description", "expected a string");
  }

  const json& ens_json = require_field(root, "ensemble", "document");
  if (!ens_json.is_array() || ens_json.empty()) parse_error("ensemble", "expected a non-empty array");
  std::vector<EnsembleMember> members;
  std::vector<std::string> prep_labels;
  for (std::size_t i = 0; i < ens_json.size(); ++i) {
    const std::string where = "ensemble[" + std::to_string(i) + "]";
    const json& member = ens_json[i];
    if (!member.is_object()) parse_error(where, "expected an object");
    reject_unknown(member, {"prior", "state", "label"}, where);
    const double prior = finite_number(require_field(member, "prior", where), where + ".prior");
    ComplexMatrix state = parse_matrix(require_field(member, "state", where), dim, where + ".state");
    members.push_back(validated(where + ".state", [&] { return EnsembleMember{prior, DensityOperator(std::move(state))}; }));
    if (auto it = member.find("label"); it != member.end()) {
      if (!it->is_string()) parse_error(where + ".label", "expected a string");
      prep_labels.push_back(it->get<std::string>());
    } else {
      prep_labels.push_back("a" + std::to_string(i));
    }
  }
  PreparationEnsemble ensemble = validated("ensemble", [&] {
    return PreparationEnsemble(std::move(members), std::move(prep_labels));
  });

  const json& povm_json = require_field(root, "povm", "document");
  if (!povm_json.is_array() || povm_json.empty()) parse_error("povm", "expected a non-empty array");
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> outcome_labels;
  for (std::size_t m = 0; m < povm_json.size(); ++m) {
    const std::string where = "povm[" + std::to_string(m) + "]";
    const json& entry = povm_json[m];
    if (!entry.is_object()) parse_error(where, "expected an object");
    reject_unknown(entry, {"label", "element"}, where);
    const json& label = require_field(entry, "label", where);
    if (!label.is_string()) parse_error(where + ".label", "expected a string");
    outcome_labels.push_back(label.get<std::string>());
    elements.push_back(parse_matrix(require_field(entry, "element", where), dim, where + ".element"));
  }
  Povm povm = validated("povm", [&] { return Povm(std::move(elements), std::move(outcome_labels)); });

  std::optional<ComplexMatrix> hamiltonian;
  if (auto it = root.find("hamiltonian"); it != root.end()) {
    ComplexMatrix h = parse_matrix(*it, dim, "hamiltonian");
    validated("hamiltonian", [&] {
      require_hermitian(h, "Hamiltonian");
      return 0;
    });
    hamiltonian = std::move(h);
  }

  std::optional<PostselectionBias> bias;
  if (auto it = root.find("postselection_bias"); it != root.end()) {
    if (!it->is_array()) parse_error("postselection_bias", "expected an array of numbers");
    std::vector<double> weights;
    for (std::size_t m = 0; m < it->size(); ++m) {
      weights.push_back(finite_number((*it)[m], "postselection_bias[" + std::to_string(m) + "]"));
    }
    if (weights.size() != povm.size()) {
      throw Error(ErrorCode::ValidationError, "postselection_bias: " + std::to_string(weights.size()) +
                                                  " weights for " + std::to_string(povm.size()) +
                                                  " outcomes");
    }
    bias = validated("postselection_bias", [&] { return PostselectionBias(std::move(weights)); });
  }

  std::optional<McSettings> mc;
  if (auto it = root.find("mc"); it != root.end()) {
    if (!it->is_object()) parse_error("mc", "expected an object");
    reject_unknown(*it, {"samples", "seed"}, "mc");
    McSettings settings;
    if (auto s = it->find("samples"); s != it->end()) settings.samples = unsigned_integer(*s, "mc.samples");
    if (auto s = it->find("seed"); s != it->end()) settings.seed = unsigned_integer(*s, "mc.seed");
    if (settings.samples < 1) throw Error(ErrorCode::ValidationError, "mc.samples: must be at least 1");
    mc = settings;
  }

  return ScenarioFile{dim, std::move(name), std::move(ensemble), std::move(povm),
                      std::move(hamiltonian), std::move(bias), mc};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
  return load_scenario(read_text_file(path));
}

std::string serialize_scenario(const ScenarioFile& s) {
  json root;
  root["dimension"] = s.dimension;
  if (!s.name.empty()) root["name"] = s.name;
  json ensemble = json::array();
  for (std::size_t i = 0; i < s.ensemble.size(); ++i) {
    ensemble.push_back({{"prior", s.ensemble[i].prior},
                        {"state", matrix_to_json(s.ensemble[i].state.matrix())},
                        {"label", s.ensemble.labels()[i]}});
  }
  root["ensemble"] = std::move(ensemble);
  json povm = json::array();
  for (std::size_t m = 0; m < s.povm.size(); ++m) {
    povm.push_back({{"label", s.povm.labels()[m]}, {"element", matrix_to_json(s.povm[m])}});
  }
  root["povm"] = std::move(povm);
  if (s.hamiltonian) root["hamiltonian"] = matrix_to_json(*s.hamiltonian);
  if (s.postselection_bias) root["postselection_bias"] = s.postselection_bias->weights();
  if (s.mc) root["mc"] = {{"samples", s.mc->samples}, {"seed", s.mc->seed}};
  return root.dump(2);
}

}  // namespace retro
