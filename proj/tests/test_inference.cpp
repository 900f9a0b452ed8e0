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
#include "retro/inference.hpp"
#include "retro/linalg.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace retro;
using namespace retro::testing;

namespace {

RealMatrix mat2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Povm z_basis() { return projective_povm(kets::computational_basis(2)); }
Povm x_basis() { return projective_povm({kets::right(), kets::left()}); }
PreparationEnsemble unbiased_z() { return pure_ensemble({0.5, 0.5}, {kets::up(), kets::down()}); }
PreparationEnsemble biased_z() { return pure_ensemble({0.75, 0.25}, {kets::up(), kets::down()}); }
PreparationEnsemble singleton_up() { return pure_ensemble({1.0}, {kets::up()}); }

// p_i Tr(rho_i pi_m) / sum_j p_j Tr(rho_j pi_m) by explicit matrix products.
double direct_retrodictive(const PreparationEnsemble& e, const Povm& p, std::size_t i, std::size_t m) {
  double den = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j)
    den += e[j].prior * trace_of_product(e[j].state.matrix(), p[m]).real();
  return e[i].prior * trace_of_product(e[i].state.matrix(), p[m]).real() / den;
}

}  // namespace

TEST_CASE("classical table") {
  SECTION("perfect correlation") {
    const auto t = classical_table(mat2(0.5, 0, 0, 0.5));
    CHECK((t.predictive.filled(-1) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((t.retrodictive.filled(-1) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("independence") {
    const auto t = classical_table(mat2(0.25, 0.25, 0.25, 0.25));
    CHECK((t.predictive.filled(-1).array() - 0.5).abs().maxCoeff() < 1e-15);
    CHECK((t.retrodictive.filled(-1).array() - 0.5).abs().maxCoeff() < 1e-15);
  }
  SECTION("hand arithmetic") {
    const auto t = classical_table(mat2(0.3, 0.1, 0.2, 0.4));
    CHECK(std::abs(t.retrodictive.value(0, 1) - 0.2) < 1e-15);
    CHECK(bayes_residual(t) < 1e-12);
  }
  SECTION("zero column is undefined, not zero") {
    const auto t = classical_table(mat2(0.5, 0.0, 0.5, 0.0));
    CHECK_FALSE(t.retrodictive.defined(0, 1));
    CHECK_FALSE(t.retrodictive.at(1, 1).has_value());
    CHECK_THROWS_AS(t.retrodictive.value(0, 1), Error);
    CHECK(bayes_residual(t) < 1e-12);
  }
  CHECK_THROWS_AS(classical_table(mat2(0.5, 0.5, 0.5, 0.5)), Error);
  CHECK_THROWS_AS(classical_table(mat2(1.2, -0.2, 0, 0)), Error);

  SECTION("random joints are consistent") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
      const auto rows = uniform_int(1, 5, rng), cols = uniform_int(1, 5, rng);
      const auto w = random_priors(std::size_t(rows * cols), rng);
      RealMatrix joint(rows, cols);
      for (int k = 0; k < rows * cols; ++k) joint(k / cols, k % cols) = w[std::size_t(k)];
      CHECK(bayes_residual(classical_table(joint)) < 1e-12);
    }
  }
}

TEST_CASE("quantum joint and predictive") {
  CHECK((quantum_joint(singleton_up(), z_basis()) - RealMatrix{{1.0, 0.0}}).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((quantum_joint(unbiased_z(), x_basis()).array() - 0.25).abs().maxCoeff() < 1e-15);
  CHECK((quantum_joint(singleton_up(), x_basis()).array() - 0.5).abs().maxCoeff() < 1e-15);

  CHECK((predictive(singleton_up(), z_basis()) - RealMatrix{{1.0, 0.0}}).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((predictive(singleton_up(), x_basis()).array() - 0.5).abs().maxCoeff() < 1e-15);

  Rng rng(22);
  const Povm p = random_povm(2, 3, rng);
  const PreparationEnsemble mixed({{1.0, DensityOperator::maximally_mixed(2)}});
  const RealMatrix row = predictive(mixed, p);
  for (std::size_t m = 0; m < p.size(); ++m)
    CHECK(std::abs(row(0, Eigen::Index(m)) - p[m].trace().real() / 2) < 1e-14);
}

TEST_CASE("retrodictive") {
  const auto single = retrodictive(singleton_up(), x_basis());
  CHECK(single.all_defined());
  CHECK((single.filled(-1).array() - 1.0).abs().maxCoeff() < 1e-15);

  CHECK((retrodictive(unbiased_z(), x_basis()).filled(-1).array() - 0.5).abs().maxCoeff() < 1e-15);
  CHECK(std::abs(retrodictive(biased_z(), x_basis()).value(0, 0) - 0.75) < 1e-15);

  SECTION("impossible outcome column is undefined") {
    const auto t = retrodictive(singleton_up(), z_basis());
    CHECK(t.defined(0, 0));
    CHECK_FALSE(t.defined(0, 1));
  }

  SECTION("agrees with explicit Bayes on random scenarios") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = uniform_int(2, 4, rng);
      const auto e = random_ensemble(d, std::size_t(uniform_int(2, 5, rng)), rng, true);
      const auto p = random_povm(d, std::size_t(uniform_int(2, 4, rng)), rng);
      const auto t = retrodictive(e, p);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t m = 0; m < p.size(); ++m)
          CHECK(std::abs(t.value(Eigen::Index(i), Eigen::Index(m)) - direct_retrodictive(e, p, i, m)) < 1e-12);
    }
  }
}

TEST_CASE("unbiased retrodictive") {
  CHECK(std::abs(unbiased_retrodictive(unbiased_z(), x_basis()).value(0, 0) - 0.5) < 1e-15);
  CHECK((unbiased_retrodictive(unbiased_z(), z_basis()).filled(-1) - RealMatrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  const auto qutrit = pure_ensemble({1.0 / 3, 1.0 / 3, 1.0 / 3}, kets::computational_basis(3));
  CHECK((unbiased_retrodictive(qutrit, projective_povm(kets::fourier_basis(3))).filled(-1).array() -
         1.0 / 3)
            .abs()
            .maxCoeff() < 1e-14);
  CHECK_THROWS_AS(unbiased_retrodictive(biased_z(), x_basis()), Error);

  SECTION("Born-rule form for random unbiased orthonormal ensembles") {
    Rng rng(24);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = uniform_int(2, 5, rng);
      const auto prep = random_orthonormal_basis(d, rng);
      const auto meas = random_orthonormal_basis(d, rng);
      const auto e = pure_ensemble(std::vector<double>(std::size_t(d), 1.0 / double(d)), prep);
      const auto t = unbiased_retrodictive(e, projective_povm(meas));
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index m = 0; m < d; ++m)
          CHECK(std::abs(t.value(i, m) - std::norm(meas[std::size_t(m)].dot(prep[std::size_t(i)]))) < 1e-12);
    }
  }
}

TEST_CASE("biased postselection") {
  const auto up = singleton_up();
  CHECK((biased_postselection_predictive(up, x_basis(), PostselectionBias({1.0, 0.0})) - RealMatrix{{1.0, 0.0}})
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK((biased_postselection_predictive(up, x_basis(), PostselectionBias({2.0 / 3, 1.0 / 3})) -
         RealMatrix{{2.0 / 3, 1.0 / 3}})
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK_THROWS_AS(biased_postselection_predictive(up, z_basis(), PostselectionBias({0.0, 1.0})), Error);
  CHECK_THROWS_AS(biased_postselection_predictive(up, z_basis(), PostselectionBias({1.0, 1.0, 1.0})), Error);

  SECTION("uniform bias reproduces predictive") {
    Rng rng(25);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = uniform_int(2, 4, rng);
      const auto e = random_ensemble(d, std::size_t(uniform_int(2, 5, rng)), rng);
      const auto p = random_povm(d, std::size_t(uniform_int(2, 4, rng)), rng);
      const RealMatrix biased = biased_postselection_predictive(e, p, PostselectionBias::uniform(p.size()));
      CHECK((biased - predictive(e, p)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("Bayes residual") {
  SECTION("quantum tables are consistent across random scenarios") {
    Rng rng(26);
    for (int trial = 0; trial < 200; ++trial) {
      const auto d = uniform_int(2, 4, rng);
      const auto e = random_ensemble(d, std::size_t(uniform_int(2, 5, rng)), rng);
      const auto p = random_povm(d, std::size_t(uniform_int(2, 4, rng)), rng);
      const auto t = quantum_table(e, p);
      CHECK(bayes_residual(t) < 1e-10);
      CHECK_NOTHROW(check_table(t, p.completeness_defect()));
    }
  }
  SECTION("a perturbed conditional is detected") {
    auto t = classical_table(mat2(0.3, 0.1, 0.2, 0.4));
    const double pb = t.outcome_marginals(1);
    t.retrodictive.set(0, 1, t.retrodictive.value(0, 1) + 0.1);
    CHECK(bayes_residual(t) >= 0.1 * pb - 1e-12);
    CHECK_THROWS_AS(check_table(t), Error);
  }
}
