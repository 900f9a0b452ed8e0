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

// Scenario documents.
//
//   {
//     "dimension": 2,
//     "ensemble": [ {"prior": 0.5, "state": M, "label": "up"}, ... ],
//     "povm": [ {"label": "right", "element": M}, ... ],
//     "hamiltonian": M,                  (optional)
//     "postselection_bias": [1.0, 0.5],  (optional)
//     "mc": {"samples": 1000000, "seed": 7}  (optional)
//   }
//
// M is an array of rows; every entry is a [re, im] pair of finite numbers.
// "label" on ensemble members, and top-level "name"/"description" strings,
// are optional extras; any other key is rejected.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "retro/state.hpp"
#include "retro/types.hpp"

namespace retro {

struct McSettings {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

struct ScenarioFile {
  Eigen::Index dimension = 0;
  std::string name;
  PreparationEnsemble ensemble;
  Povm povm;
  std::optional<ComplexMatrix> hamiltonian;
  std::optional<PostselectionBias> postselection_bias;
  std::optional<McSettings> mc;
};

/// Throws ParseError for malformed JSON or wrongly typed fields, and
/// ValidationError (message prefixed by the offending field) when a decoded
/// object violates its invariants.
ScenarioFile load_scenario(std::string_view document);
ScenarioFile load_scenario_file(const std::filesystem::path& path);

/// Canonical JSON text; load_scenario(serialize_scenario(s)) reproduces s exactly.
std::string serialize_scenario(const ScenarioFile& s);

/// Raw bytes of a file. Throws ParseError when unreadable.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace retro
