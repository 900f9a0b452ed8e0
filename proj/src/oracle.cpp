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

#include "retro/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "retro/error.hpp"

namespace retro {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Tr(rho sigma) summed entry by entry. Deliberately local: the oracle does not
// share arithmetic with the analytic engine.
double born_trace(const ComplexMatrix& rho, const ComplexMatrix& effect) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < rho.rows(); ++j)
    for (Eigen::Index k = 0; k < rho.cols(); ++k) acc += (rho(j, k) * effect(k, j)).real();
  return std::max(acc, 0.0);
}

struct SamplingModel {
  RealVector priors;
  std::vector<RealVector> outcome_weights;  // per preparation, Tr(rho_i pi_m)

  SamplingModel(const PreparationEnsemble& e, const Povm& p) : priors(e.priors()) {
    if (e.dim() != p.dim()) throw Error(ErrorCode::DimMismatch, "ensemble vs POVM dimension");
    for (std::size_t i = 0; i < e.size(); ++i) {
      RealVector w(Eigen::Index(p.size()));
      for (std::size_t m = 0; m < p.size(); ++m) w(Eigen::Index(m)) = born_trace(e[i].state.matrix(), p[m]);
      outcome_weights.push_back(std::move(w));
    }
  }

  RunRecord draw(RunStream& rng) const {
    const std::size_t i = sample_categorical(priors, rng);
    const std::size_t m = sample_categorical(outcome_weights[i], rng);
    return {i, std::nullopt, m};
  }
};

double overlap_sq(const Ket& a, const Ket& b) {
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) acc += std::conj(a(k)) * b(k);
  return std::norm(acc);
}

// Splits [0, samples) into contiguous chunks, counts each chunk on its own
// thread, and sums. Counts are integers, so the merge is exact.
CountMatrix parallel_counts(Eigen::Index rows, Eigen::Index cols, std::uint64_t samples,
                            unsigned threads,
                            const std::function<void(std::uint64_t, CountMatrix&)>& count_run) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, samples / 4096)));
  std::vector<CountMatrix> partial(threads, CountMatrix::Zero(rows, cols));
  auto work = [&](unsigned t) {
    const std::uint64_t begin = samples * t / threads;
    const std::uint64_t end = samples * (t + 1) / threads;
    for (std::uint64_t r = begin; r < end; ++r) count_run(r, partial[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  CountMatrix total = CountMatrix::Zero(rows, cols);
  for (const auto& c : partial) total += c;
  return total;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
    ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
           std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
  }
  return ctr;
}

double RunStream::uniform() {
  const std::uint64_t half = draw_ % 2;
  if (half == 0) {
    const std::uint64_t blk = draw_ / 2;
    cache_ = Philox4x32::block({std::uint32_t(blk), std::uint32_t(blk >> 32), std::uint32_t(run_),
                                std::uint32_t(run_ >> 32)},
                               {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)});
  }
  ++draw_;
  const std::uint64_t bits =
      (std::uint64_t(cache_[2 * half]) << 32) | std::uint64_t(cache_[2 * half + 1]);
  return double(bits >> 11) * 0x1.0p-53;
}

std::size_t sample_categorical(const RealVector& weights, RunStream& rng) {
  const double total = weights.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::ImpossibleOutcome, "all categorical weights are zero");
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    if (weights(k) <= 0.0) continue;
    last_positive = std::size_t(k);
    cumulative += weights(k);
    if (target < cumulative) return std::size_t(k);
  }
  return last_positive;
}

RunRecord sample_run(const PreparationEnsemble& e, const Povm& p, RunStream& rng) {
  return SamplingModel(e, p).draw(rng);
}

RunRecord sample_triad(const SpinTriadScenario& s, RunStream& rng) {
  const Ket prepared = s.prepared();
  const Ket claire[2] = {s.claire_parallel(), s.claire_antiparallel()};
  RealVector claire_weights(2);
  claire_weights << overlap_sq(claire[0], prepared), overlap_sq(claire[1], prepared);
  const std::size_t c = sample_categorical(claire_weights, rng);

  const Ket& collapsed = claire[c];
  const Ket bob = s.measured();
  RealVector bob_weights(2);
  const double aligned = overlap_sq(bob, collapsed);
  bob_weights << aligned, std::max(0.0, 1.0 - aligned);
  const std::size_t b = sample_categorical(bob_weights, rng);
  return {0, c, b};
}

double binomial_se(double p_hat, std::uint64_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / double(n));
}

bool within_band(double analytic, double estimate, double se, std::uint64_t n, double k) {
  const double diff = std::abs(estimate - analytic);
  if (se > 0.0) return diff <= k * se;
  return n > 0 && diff <= 1.0 / double(n);
}

EmpiricalTable tabulate(const CountMatrix& counts) {
  EmpiricalTable t;
  const Eigen::Index rows = counts.rows(), cols = counts.cols();
  t.counts = counts;
  t.samples = counts.sum();
  const double n = double(t.samples);
  t.joint = counts.cast<double>() / (n > 0 ? n : 1.0);
  t.prep_marginals = t.joint.rowwise().sum();
  t.outcome_marginals = t.joint.colwise().sum().transpose();
  t.joint_se = RealMatrix(rows, cols);
  t.predictive = t.predictive_se = ConditionalTable(rows, cols);
  t.retrodictive = t.retrodictive_se = ConditionalTable(rows, cols);
  const CountMatrix row_totals = counts.rowwise().sum();
  const CountMatrix col_totals = counts.colwise().sum();
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index m = 0; m < cols; ++m) {
      t.joint_se(i, m) = binomial_se(t.joint(i, m), t.samples);
      if (const std::uint64_t ni = row_totals(i, 0); ni > 0) {
        const double p = double(counts(i, m)) / double(ni);
        t.predictive.set(i, m, p);
        t.predictive_se.set(i, m, binomial_se(p, ni));
      }
      if (const std::uint64_t nm = col_totals(0, m); nm > 0) {
        const double p = double(counts(i, m)) / double(nm);
        t.retrodictive.set(i, m, p);
        t.retrodictive_se.set(i, m, binomial_se(p, nm));
      }
    }
  }
  return t;
}

EmpiricalTable estimate(const PreparationEnsemble& e, const Povm& p, std::uint64_t samples,
                        std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw Error(ErrorCode::ValidationError, "sample count must be at least 1");
  const SamplingModel model(e, p);
  const CountMatrix counts = parallel_counts(
      Eigen::Index(e.size()), Eigen::Index(p.size()), samples, threads,
      [&](std::uint64_t run, CountMatrix& c) {
        RunStream rng(seed, run);
        const RunRecord rec = model.draw(rng);
        ++c(Eigen::Index(rec.prep), Eigen::Index(rec.final_outcome));
      });
  return tabulate(counts);
}

TriadEstimate estimate_triad(const SpinTriadScenario& s, std::uint64_t samples, std::uint64_t seed,
                             unsigned threads) {
  if (samples < 1) throw Error(ErrorCode::ValidationError, "sample count must be at least 1");
  TriadEstimate out;
  out.counts = parallel_counts(2, 2, samples, threads, [&](std::uint64_t run, CountMatrix& c) {
    RunStream rng(seed, run);
    const RunRecord rec = sample_triad(s, rng);
    ++c(Eigen::Index(*rec.intermediate), Eigen::Index(rec.final_outcome));
  });
  out.samples = samples;
  const std::uint64_t parallel = out.counts(0, 0) + out.counts(0, 1);
  out.claire_parallel = double(parallel) / double(samples);
  out.claire_parallel_se = binomial_se(out.claire_parallel, samples);
  out.bob_aligned = out.counts(0, 0) + out.counts(1, 0);
  if (out.bob_aligned > 0) {
    const double p = double(out.counts(0, 0)) / double(out.bob_aligned);
    out.claire_given_bob = p;
    out.claire_given_bob_se = binomial_se(p, out.bob_aligned);
  }
  return out;
}

}  // namespace retro
