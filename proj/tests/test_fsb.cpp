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

#include "retro/error.hpp"
#include "retro/fsb.hpp"
#include "retro/inference.hpp"
#include "retro/linalg.hpp"
#include "support/generators.hpp"

using namespace retro;
using namespace retro::testing;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Povm x_basis() { return projective_povm({kets::right(), kets::left()}); }

}  // namespace

TEST_CASE("unbiased ensemble: FSB states are the standard ones") {
  const auto e = pure_ensemble({0.5, 0.5}, {kets::up(), kets::down()});
  const auto d = fsb_decompose(e, x_basis());
  CHECK(max_abs(d.retro_states[0].matrix() - projector(kets::right())) < 1e-14);
  CHECK(max_abs(d.retro_states[1].matrix() - projector(kets::left())) < 1e-14);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t m = 0; m < 2; ++m) CHECK(std::abs(fsb_probability(d, i, m) - 0.5) < 1e-14);

  const auto rep = outcome_dependence_report(e, x_basis());
  REQUIRE(rep.pairs.size() == 1);
  CHECK(std::abs(rep.pairs[0].fsb - rep.pairs[0].standard) < 1e-14);
}

TEST_CASE("pure preparation: every outcome gives back the preparation") {
  const auto e = pure_ensemble({1.0}, {kets::up()});
  const auto d = fsb_decompose(e, x_basis());
  for (const auto& s : d.retro_states) CHECK(max_abs(s.matrix() - projector(kets::up())) < 1e-12);
  CHECK(std::abs(fsb_probability(d, 0, 0) - 1.0) < 1e-12);
  CHECK(max_abs(d.support_projector - projector(kets::up())) < 1e-12);

  const auto rep = outcome_dependence_report(e, x_basis());
  CHECK(rep.max_fsb < 1e-10);
  CHECK(std::abs(rep.max_standard - 1.0) < 1e-12);
}

TEST_CASE("biased ensemble probability") {
  const auto e = pure_ensemble({0.75, 0.25}, {kets::up(), kets::down()});
  const auto d = fsb_decompose(e, x_basis());
  CHECK(std::abs(fsb_probability(d, 0, 0) - 0.75) < 1e-14);
  CHECK(std::abs(fsb_probability(d, 0, 0) - retrodictive(e, x_basis()).value(0, 0)) < 1e-14);
}

TEST_CASE("indistinguishable outcomes") {
  ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  const Povm p({half, half});
  for (const auto& e : {pure_ensemble({1.0}, {kets::up()}), pure_ensemble({0.3, 0.7}, {kets::up(), kets::right()})}) {
    const auto rep = outcome_dependence_report(e, p);
    CHECK(rep.max_fsb < 1e-14);
    CHECK(rep.max_standard < 1e-14);
  }
}

TEST_CASE("impossible outcome is rejected") {
  const auto e = pure_ensemble({1.0}, {kets::up()});
  CHECK_THROWS_AS(fsb_decompose(e, projective_povm(kets::computational_basis(2))), Error);
  const auto d = fsb_decompose(e, x_basis());
  CHECK_THROWS_AS(fsb_probability(d, 1, 0), Error);
  CHECK_THROWS_AS(fsb_probability(d, 0, 2), Error);
}

TEST_CASE("equivalence with the standard rule on random scenarios") {
  Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const auto dim = uniform_int(2, 4, rng);
    const auto e = random_ensemble(dim, std::size_t(uniform_int(2, 5, rng)), rng, true);
    const auto p = random_povm(dim, std::size_t(uniform_int(2, 4, rng)), rng);
    CHECK(fsb_equivalence_residual(e, p) < 1e-10);

    const auto d = fsb_decompose(e, p);
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto& eff : d.retro_povm) sum += eff;
    CHECK(max_abs(sum - ComplexMatrix::Identity(dim, dim)) < 1e-9);
  }
}

TEST_CASE("rank-deficient a priori state") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const Ket a = random_ket(3, rng), b = random_ket(3, rng);
    const auto e = pure_ensemble({0.4, 0.6}, {a, b});
    const auto p = random_povm(3, 3, rng);
    CHECK(fsb_equivalence_residual(e, p) < 1e-10);
    const auto d = fsb_decompose(e, p);
    CHECK(numerical_rank(d.support_projector) == 2);
  }
}
