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
#include "retro/linalg.hpp"
#include "retro/state.hpp"
#include "support/generators.hpp"

using namespace retro;
using namespace retro::testing;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected retro::Error");
  return ErrorCode::NumericalInconsistency;
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("DensityOperator validation") {
  CHECK_NOTHROW(DensityOperator(diag2(0.25, 0.75)));
  CHECK(code_of([] { DensityOperator(diag2(0.5, 0.6)); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] { DensityOperator(diag2(1.5, -0.5)); }) == ErrorCode::NotPsd);
  ComplexMatrix skew(2, 2);
  skew << 0.5, 0.1, -0.1, 0.5;
  CHECK(code_of([&] { DensityOperator{skew}; }) == ErrorCode::NotHermitian);
  CHECK(code_of([] { DensityOperator(ComplexMatrix::Identity(2, 3)); }) == ErrorCode::InvalidMatrix);

  const auto pure = DensityOperator::pure(Ket(2.0 * kets::right()));
  CHECK(max_abs(pure.matrix() - projector(kets::right())) < 1e-15);
  CHECK(std::abs(pure.purity() - 1.0) < 1e-14);
  CHECK(std::abs(DensityOperator::maximally_mixed(4).purity() - 0.25) < 1e-14);
  CHECK(code_of([] { DensityOperator::pure(Ket::Zero(2)); }) == ErrorCode::InvalidMatrix);
}

TEST_CASE("a priori state") {
  CHECK(max_abs(a_priori_state(pure_ensemble({1.0}, {kets::up()})).matrix() - projector(kets::up())) <
        1e-15);
  CHECK(max_abs(a_priori_state(pure_ensemble({0.5, 0.5}, {kets::up(), kets::down()})).matrix() -
                diag2(0.5, 0.5)) < 1e-15);
  CHECK(max_abs(a_priori_state(pure_ensemble({0.75, 0.25}, {kets::up(), kets::down()})).matrix() -
                diag2(0.75, 0.25)) < 1e-15);
}

TEST_CASE("is_unbiased") {
  CHECK(is_unbiased(pure_ensemble({0.5, 0.5}, {kets::up(), kets::down()})));
  CHECK(is_unbiased(pure_ensemble({0.5, 0.5}, {kets::right(), kets::left()})));
  CHECK_FALSE(is_unbiased(pure_ensemble({1.0}, {kets::up()})));
  CHECK_FALSE(is_unbiased(pure_ensemble({0.5, 0.5}, {kets::up(), kets::right()})));
  CHECK(is_unbiased(pure_ensemble({1.0 / 3, 1.0 / 3, 1.0 / 3}, kets::fourier_basis(3))));
}

TEST_CASE("ensemble validation") {
  CHECK(code_of([] { pure_ensemble({0.6, 0.6}, {kets::up(), kets::down()}); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] { pure_ensemble({1.2, -0.2}, {kets::up(), kets::down()}); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] {
          pure_ensemble({0.5, 0.5}, {kets::up(), kets::basis(3, 0)});
        }) == ErrorCode::DimMismatch);
  try {
    pure_ensemble({0.6, 0.6}, {kets::up(), kets::down()});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("normalization") != std::string::npos);
  }
  const auto e = pure_ensemble({0.5, 0.5}, {kets::up(), kets::down()});
  CHECK(e.labels() == std::vector<std::string>{"a0", "a1"});
}

TEST_CASE("projective_povm") {
  const auto z = projective_povm(kets::computational_basis(2));
  CHECK(max_abs(z[0] - projector(kets::up())) < 1e-15);
  CHECK(max_abs(z[1] - projector(kets::down())) < 1e-15);
  const auto x = projective_povm({kets::right(), kets::left()});
  CHECK(max_abs(x[0] - projector(kets::right())) < 1e-15);
  CHECK(max_abs(x[1] - projector(kets::left())) < 1e-15);
  CHECK(code_of([] { projective_povm({kets::up(), kets::right()}); }) == ErrorCode::NotOrthonormal);
  CHECK(code_of([] { projective_povm({kets::up()}); }) == ErrorCode::IncompleteBasis);
  CHECK(x.labels() == std::vector<std::string>{"b0", "b1"});
}

TEST_CASE("Povm validation") {
  CHECK(code_of([] { Povm({diag2(0.45, 0.45), diag2(0.45, 0.45)}); }) == ErrorCode::IncompletePovm);
  CHECK(code_of([] { Povm({diag2(1.5, 0.5), diag2(-0.5, 0.5)}); }) == ErrorCode::NotPsd);
  CHECK_NOTHROW(Povm({diag2(0.5, 0.5), diag2(0.5, 0.5)}));

  SECTION("random POVMs are accepted") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index d = uniform_int(2, 6, rng);
      const Povm p = random_povm(d, std::size_t(uniform_int(2, 5, rng)), rng);
      CHECK(p.completeness_defect() < 1e-9);
    }
  }
}

TEST_CASE("retrodictive_state") {
  CHECK(max_abs(retrodictive_state(projector(kets::right())).matrix() - projector(kets::right())) < 1e-15);
  CHECK(max_abs(retrodictive_state(diag2(0.5, 0.5)).matrix() - diag2(0.5, 0.5)) < 1e-15);
  CHECK(max_abs(retrodictive_state(diag2(0.9, 0.3)).matrix() - diag2(0.75, 0.25)) < 1e-15);
  CHECK(code_of([] { retrodictive_state(diag2(0.0, 0.0)); }) == ErrorCode::ZeroTraceElement);

  SECTION("projective elements come back unchanged") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      const auto basis = random_orthonormal_basis(uniform_int(2, 6, rng), rng);
      const Povm p = projective_povm(basis);
      for (std::size_t m = 0; m < p.size(); ++m) CHECK(max_abs(retrodictive_state(p, m).matrix() - p[m]) < 1e-12);
    }
  }
}

TEST_CASE("PostselectionBias") {
  CHECK(code_of([] { PostselectionBias({1.0, -0.1}); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { PostselectionBias({0.0, 0.0}); }) == ErrorCode::ValidationError);
  CHECK(PostselectionBias::uniform(3).size() == 3);
}

TEST_CASE("Fourier basis") {
  const auto f = kets::fourier_basis(3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(std::norm(f[j].dot(f[k])) - (j == k ? 1.0 : 0.0)) < 1e-14);
      CHECK(std::abs(std::norm(f[j](Eigen::Index(k))) - 1.0 / 3) < 1e-14);
    }
}
