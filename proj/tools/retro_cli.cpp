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

// retro-cli: predictive/retrodictive inference over scenario documents.
//
// Exit codes: 0 success, 1 internal numerical failure, 2 user or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "retro/error.hpp"
#include "retro/report.hpp"
#include "retro/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string scenario;
  std::string format = "json";
  std::string out;
  std::optional<std::uint64_t> mc;
  std::optional<std::uint64_t> seed;
  double theta = 0.0;
  double phi = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t samples = 50;
};

struct LoadedScenario {
  retro::ScenarioFile file;
  std::string digest;
};

LoadedScenario load(const std::string& path) {
  const std::string bytes = retro::read_text_file(path);
  return {retro::load_scenario(bytes), "sha256:" + retro::sha256_hex(bytes)};
}

// --mc enables sampling and overrides the scenario's own sample count; --seed
// overrides its seed.
std::optional<retro::McSettings> mc_settings(const Options& o, const std::optional<retro::McSettings>& file) {
  if (!o.mc && !file) return std::nullopt;
  retro::McSettings s = file.value_or(retro::McSettings{});
  if (o.mc) s.samples = *o.mc;
  if (o.seed) s.seed = *o.seed;
  return s;
}

void emit(const retro::RunReport& report, const Options& o) {
  const auto format = o.format == "csv" ? retro::Format::Csv : retro::Format::Json;
  const std::string text = retro::render(report, format);
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw retro::Error(retro::ErrorCode::ParseError, "cannot write " + o.out);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictive and retrodictive inference for finite-dimensional quantum scenarios"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Write the report to PATH instead of stdout");
  };
  auto add_mc = [&o](CLI::App* cmd) {
    cmd->add_option("--mc", o.mc, "Monte-Carlo sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Monte-Carlo seed (unsigned 64-bit)");
  };

  auto* infer = app.add_subcommand("infer", "Joint, marginal, predictive and retrodictive tables");
  infer->add_option("scenario", o.scenario, "Scenario document")->required();
  add_common(infer);
  add_mc(infer);

  auto* triad = app.add_subcommand("spin-triad", "Claire's intermediate spin measurement");
  triad->add_option("--theta", o.theta, "Polar angle of Claire's axis (radians)")->capture_default_str();
  triad->add_option("--phi", o.phi, "Azimuth of Claire's axis (radians)")->capture_default_str();
  add_common(triad);
  add_mc(triad);

  auto* fsb = app.add_subcommand("fsb", "Symmetrized retrodictive states and their outcome dependence");
  fsb->add_option("scenario", o.scenario, "Scenario document")->required();
  add_common(fsb);

  auto* dynamics = app.add_subcommand("dynamics", "Forward/backward evolution certificates");
  dynamics->add_option("scenario", o.scenario, "Scenario document")->required();
  dynamics->add_option("--t0", o.t0, "Preparation time")->capture_default_str();
  dynamics->add_option("--t1", o.t1, "Measurement time")->capture_default_str();
  dynamics->add_option("--samples", o.samples, "Interior sample times")->capture_default_str();
  add_common(dynamics);

  auto* validate = app.add_subcommand("validate", "Check a scenario document");
  validate->add_option("scenario", o.scenario, "Scenario document")->required();
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*infer) {
      const auto s = load(o.scenario);
      emit(retro::infer_report(s.file, s.digest, mc_settings(o, s.file.mc)), o);
    } else if (*triad) {
      emit(retro::spin_triad_report(o.theta, o.phi, mc_settings(o, std::nullopt)), o);
    } else if (*fsb) {
      const auto s = load(o.scenario);
      emit(retro::fsb_report(s.file, s.digest), o);
    } else if (*dynamics) {
      const auto s = load(o.scenario);
      emit(retro::dynamics_report(s.file, s.digest, o.t0, o.t1, o.samples), o);
    } else if (*validate) {
      const auto s = load(o.scenario);
      emit(retro::validate_report(s.file, s.digest), o);
    }
  } catch (const retro::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
