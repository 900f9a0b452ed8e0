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

// Frequency oracle: simulate prepare -> (optional intermediate measurement)
// -> measure runs and estimate probabilities by counting.
//
// The sampler computes its own Born traces from the ensemble and POVM; it
// never calls into the analytic inference code it is used to check.
//
// Randomness comes from Philox-4x32-10 keyed by the seed. Run r reads its
// uniforms from counters (block, 0, r_lo, r_hi), so any partition of the runs
// across threads produces the same counts as a serial pass.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "retro/inference.hpp"
#include "retro/spin_triad.hpp"
#include "retro/state.hpp"

namespace retro {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key);
};

/// Uniform draws for one run. Draw k is a pure function of (seed, run, k).
class RunStream {
 public:
  RunStream(std::uint64_t seed, std::uint64_t run) : seed_(seed), run_(run) {}

  /// Next uniform in [0, 1) with 53 random bits.
  double uniform();
  std::uint64_t draws() const noexcept { return draw_; }

 private:
  std::uint64_t seed_;
  std::uint64_t run_;
  std::uint64_t draw_ = 0;
  Philox4x32::Counter cache_{};
};

/// Inverse-CDF categorical draw with one uniform. Zero-weight categories are
/// never chosen.
std::size_t sample_categorical(const RealVector& weights, RunStream& rng);

struct RunRecord {
  std::size_t prep;
  std::optional<std::size_t> intermediate;
  std::size_t final_outcome;
};

RunRecord sample_run(const PreparationEnsemble& e, const Povm& p, RunStream& rng);

/// Prepare along the preparation direction, Claire measures theta (0 =
/// parallel, 1 = antiparallel) with ideal collapse, Bob measures along his
/// direction (0 = aligned, 1 = anti-aligned).
RunRecord sample_triad(const SpinTriadScenario& s, RunStream& rng);

using CountMatrix = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct EmpiricalTable {
  CountMatrix counts;  // I x M
  std::uint64_t samples = 0;
  RealMatrix joint;
  RealVector prep_marginals;
  RealVector outcome_marginals;
  ConditionalTable predictive;    // undefined where a row count is 0
  ConditionalTable retrodictive;  // undefined where a column count is 0
  RealMatrix joint_se;
  ConditionalTable predictive_se;
  ConditionalTable retrodictive_se;
};

/// Reproducible given (e, p, samples, seed) regardless of `threads` (0 = hardware).
EmpiricalTable estimate(const PreparationEnsemble& e, const Povm& p, std::uint64_t samples,
                        std::uint64_t seed, unsigned threads = 0);

/// Builds the estimates and standard errors from raw counts.
EmpiricalTable tabulate(const CountMatrix& counts);

struct TriadEstimate {
  CountMatrix counts;  // (claire, bob), 2 x 2
  std::uint64_t samples = 0;
  double claire_parallel = 0.0;  // P(theta | prep)
  double claire_parallel_se = 0.0;
  std::optional<double> claire_given_bob;  // P(theta | prep, bob aligned)
  double claire_given_bob_se = 0.0;
  std::uint64_t bob_aligned = 0;
};

TriadEstimate estimate_triad(const SpinTriadScenario& s, std::uint64_t samples, std::uint64_t seed,
                             unsigned threads = 0);

/// sqrt(p(1-p)/n), 0 for n == 0.
double binomial_se(double p_hat, std::uint64_t n);

/// |estimate - analytic| <= k * se. With se == 0 (all-or-nothing counts) the
/// estimate must lie within one count, 1/n, of the analytic value.
bool within_band(double analytic, double estimate, double se, std::uint64_t n, double k = 5.0);

}  // namespace retro
