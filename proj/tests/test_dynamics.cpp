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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "retro/dynamics.hpp"
#include "retro/error.hpp"
#include "retro/linalg.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace retro;
using namespace retro::testing;
using std::numbers::pi;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

const ComplexMatrix kZero = ComplexMatrix::Zero(2, 2);

}  // namespace

TEST_CASE("evolve") {
  const EvolvingState right{DensityOperator::pure(kets::right()), 0.0, TimeDirection::Predictive};
  CHECK(max_abs(evolve(right, kZero, 5.0).matrix() - projector(kets::right())) < 1e-15);

  const ComplexMatrix h = pauli_z() / 2.0;
  CHECK(max_abs(evolve(right, h, pi).matrix() - projector(kets::left())) < 1e-14);

  const EvolvingState retro{DensityOperator::pure(kets::right()), 2.0, TimeDirection::Retrodictive};
  CHECK(max_abs(evolve(retro, h, 2.0).matrix() - projector(kets::right())) < 1e-15);
  CHECK(max_abs(evolve(retro, h, 2.0 - pi).matrix() - projector(kets::left())) < 1e-14);

  CHECK_THROWS_AS(evolve(right, h, -0.1), Error);
  CHECK_THROWS_AS(evolve(retro, h, 2.1), Error);
  try {
    evolve(retro, h, 2.1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TimeDirectionViolation);
  }
}

TEST_CASE("transition amplitude") {
  CHECK(std::abs(transition_amplitude(kets::up(), kets::up(), kZero, 0, 1, 0.5) - 1.0) < 1e-15);
  for (double t : {0.0, 0.3, 1.0})
    CHECK(std::abs(transition_amplitude(kets::up(), kets::right(), kZero, 0, 1, t) - std::sqrt(0.5)) < 1e-15);

  const ComplexMatrix h = pauli_z() / 2.0;
  const double t0 = 0.4, t1 = 0.4 + pi;
  const Complex c0 = transition_amplitude(kets::up(), kets::right(), h, t0, t1, t0);
  for (double t : {t0, (t0 + t1) / 2, t1}) {
    const Complex c = transition_amplitude(kets::up(), kets::right(), h, t0, t1, t);
    CHECK(std::abs(std::abs(c) - std::sqrt(0.5)) < 1e-10);
    CHECK(std::abs(c - c0) < 1e-10);
  }
  CHECK_THROWS_AS(transition_amplitude(kets::up(), kets::up(), h, 0, 1, 1.5), Error);
  CHECK_THROWS_AS(transition_amplitude(kets::up(), kets::up(), h, 1, 0, 0.5), Error);
}

TEST_CASE("predictive and retrodictive probabilities") {
  const Povm z = projective_povm(kets::computational_basis(2));
  const Povm x = projective_povm({kets::right(), kets::left()});
  CHECK(std::abs(predictive_outcome_probability(kets::up(), kZero, 0, 1, z, 0) - 1.0) < 1e-15);
  CHECK(std::abs(predictive_outcome_probability(kets::up(), kZero, 0, 1, x, 0) - 0.5) < 1e-15);
  CHECK(std::abs(predictive_outcome_probability(kets::up(), pauli_x() / 2.0, 0, pi, z, 1) - 1.0) < 1e-14);

  const auto zb = kets::computational_basis(2);
  CHECK(std::abs(retrodictive_preparation_probability(kets::right(), kZero, 0, 1, zb, 0) - 0.5) < 1e-15);
  CHECK(std::abs(retrodictive_preparation_probability(kets::up(), kZero, 0, 1, zb, 0) - 1.0) < 1e-15);
  CHECK_THROWS_AS(retrodictive_preparation_probability(kets::up(), kZero, 0, 1, {kets::up(), kets::right()}, 0),
                  Error);

  SECTION("forward and backward agree for random unitary scenarios") {
    Rng rng(31);
    std::uniform_real_distribution<double> span(0.1, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = uniform_int(2, 6, rng);
      const ComplexMatrix h = random_hermitian(d, rng);
      const auto prep = random_orthonormal_basis(d, rng);
      const auto meas = random_orthonormal_basis(d, rng);
      const Povm p = projective_povm(meas);
      const double t0 = span(rng), t1 = t0 + span(rng);
      const ComplexMatrix u = expm_taylor(Complex(0, -(t1 - t0)) * h);
      for (std::size_t i = 0; i < prep.size(); ++i)
        for (std::size_t m = 0; m < meas.size(); ++m) {
          const double fwd = predictive_outcome_probability(prep[i], h, t0, t1, p, m);
          const double bwd = retrodictive_preparation_probability(meas[m], h, t0, t1, prep, i);
          const double oracle = std::norm(meas[m].dot(u * prep[i]));
          CHECK(std::abs(fwd - bwd) < 1e-12);
          CHECK(std::abs(fwd - oracle) < 1e-10);
        }
    }
  }
}

TEST_CASE("invariance certificates") {
  CHECK(amplitude_invariance_deviation(kets::up(), kets::right(), kZero, 0, 1, 50) == 0.0);

  SECTION("random Hamiltonians and kets") {
    Rng rng(32);
    std::uniform_real_distribution<double> span(0.1, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = uniform_int(2, 6, rng);
      const ComplexMatrix h = random_hermitian(d, rng);
      const double t0 = -span(rng), t1 = span(rng);
      CHECK(amplitude_invariance_deviation(random_ket(d, rng), random_ket(d, rng), h, t0, t1, 50) < 1e-9);
      const DensityOperator rho(random_density_matrix(d, uniform_int(1, int(d), rng), rng));
      const ComplexMatrix element = random_psd(d, uniform_int(1, int(d), rng), rng);
      CHECK(overlap_invariance_deviation(rho, element, h, t0, t1, 50) < 1e-9);
    }
  }
}

TEST_CASE("interior times") {
  const auto t = interior_times(0.0, 1.0, 4);
  REQUIRE(t.size() == 4);
  CHECK(t.front() > 0.0);
  CHECK(t.back() < 1.0);
  CHECK(std::abs(t[1] - 0.4) < 1e-15);
}
