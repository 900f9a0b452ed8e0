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

// Report builders behind the command-line tool. Each returns a RunReport whose
// JSON body has a fixed key order; render() turns it into JSON or CSV.
//
// CSV layout, identical for every command:
//
//   quantity,preparation,outcome,value,std_error
//
// with one row per scalar. Cells that do not apply are left empty and
// undefined conditionals print as "undefined".

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "retro/scenario_io.hpp"

namespace retro {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Format { Json, Csv };

struct CsvRow {
  std::string quantity;
  std::string preparation;
  std::string outcome;
  std::string value;
  std::string std_error;
};

struct RunReport {
  std::string command;
  std::string digest;           // "sha256:<hex>" of the scenario bytes or parameters
  nlohmann::ordered_json body;  // includes tool, version, command and digest
  std::vector<CsvRow> rows;
};

std::string sha256_hex(std::string_view bytes);

/// Rounds to 12 significant digits, the precision of every reported number.
double reported(double x);

/// Joint, marginal, predictive and retrodictive tables plus the Bayes residual;
/// postselected predictions when the scenario carries a bias; an empirical
/// comparison when `mc` is set. Throws NumericalInconsistency if the Bayes
/// residual reaches 1e-10.
RunReport infer_report(const ScenarioFile& s, std::string_view digest,
                       const std::optional<McSettings>& mc);

RunReport spin_triad_report(double theta, double phi, const std::optional<McSettings>& mc);

/// FSB states and effects, their probabilities, the residual against the
/// standard rule, and the outcome-dependence distances.
RunReport fsb_report(const ScenarioFile& s, std::string_view digest);

/// Amplitude (pure pairs) or overlap (mixed pairs) invariance over `samples`
/// interior times, and the forward/backward probability pair per (i, m).
/// Throws ValidationError when the scenario has no Hamiltonian.
RunReport dynamics_report(const ScenarioFile& s, std::string_view digest, double t0, double t1,
                          std::size_t samples);

RunReport validate_report(const ScenarioFile& s, std::string_view digest);

std::string render(const RunReport& r, Format f);

}  // namespace retro
