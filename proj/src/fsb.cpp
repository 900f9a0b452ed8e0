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

#include "retro/fsb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retro/inference.hpp"
#include "retro/linalg.hpp"

namespace retro {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

FsbDecomposition fsb_decompose(const PreparationEnsemble& e, const Povm& p) {
  require_same_dim(a_priori_state(e).matrix(), p[0], "ensemble vs POVM");
  const ComplexMatrix rho = a_priori_state(e).matrix();
  const ComplexMatrix root = psd_sqrt(rho);
  const ComplexMatrix inv_root = psd_pinv_sqrt(rho);

  FsbDecomposition d;
  d.support_projector = support_projector(rho);
  d.retro_states.reserve(p.size());
  for (std::size_t m = 0; m < p.size(); ++m) {
    const double outcome_prob = real_trace_product(rho, p[m]);
    if (outcome_prob <= tol::kZeroProbability) {
      throw Error(ErrorCode::ImpossibleOutcome, "outcome " + std::to_string(m) + " (" + p.labels()[m] +
                                                    ") has probability " + std::to_string(outcome_prob));
    }
    d.retro_states.emplace_back(hermitian_part(root * p[m] * root) / outcome_prob);
  }

  const Eigen::Index dim = rho.rows();
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  d.retro_povm.reserve(e.size());
  for (const auto& member : e.members()) {
    d.retro_povm.push_back(hermitian_part(inv_root * (member.prior * member.state.matrix()) * inv_root));
    sum += d.retro_povm.back();
  }
  const double defect = (sum - d.support_projector).norm();
  if (defect > tol::kPovmSum) {
    throw Error(ErrorCode::NumericalInconsistency,
                "retrodictive effects miss the support projector by " + std::to_string(defect));
  }
  return d;
}

double fsb_probability(const FsbDecomposition& d, std::size_t i, std::size_t m) {
  if (i >= d.retro_povm.size() || m >= d.retro_states.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "(" + std::to_string(i) + ", " + std::to_string(m) + ") outside " +
                    std::to_string(d.retro_povm.size()) + "x" + std::to_string(d.retro_states.size()));
  }
  return real_trace_product(d.retro_states[m].matrix(), d.retro_povm[i]);
}

double fsb_equivalence_residual(const PreparationEnsemble& e, const Povm& p) {
  const FsbDecomposition d = fsb_decompose(e, p);
  const ConditionalTable standard = retrodictive(e, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t m = 0; m < p.size(); ++m) {
      if (auto v = standard.at(Eigen::Index(i), Eigen::Index(m))) {
        worst = std::max(worst, std::abs(fsb_probability(d, i, m) - *v));
      }
    }
  }
  return worst;
}

OutcomeDependenceReport outcome_dependence_report(const PreparationEnsemble& e, const Povm& p) {
  const FsbDecomposition d = fsb_decompose(e, p);
  std::vector<DensityOperator> standard;
  standard.reserve(p.size());
  for (std::size_t m = 0; m < p.size(); ++m) standard.push_back(retrodictive_state(p, m));

  OutcomeDependenceReport report;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      OutcomePairDistance pair{
          a, b, trace_distance(d.retro_states[a].matrix(), d.retro_states[b].matrix()),
          trace_distance(standard[a].matrix(), standard[b].matrix())};
      report.max_fsb = std::max(report.max_fsb, pair.fsb);
      report.max_standard = std::max(report.max_standard, pair.standard);
      report.pairs.push_back(pair);
    }
  }
  return report;
}

}  // namespace retro
