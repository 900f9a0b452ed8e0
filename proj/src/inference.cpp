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

#include "retro/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retro/linalg.hpp"

namespace retro {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kMarginalTol = 1e-12;
constexpr double kUnitSlack = 1e-12;

void require_compatible(const PreparationEnsemble& e, const Povm& p) {
  if (e.dim() != p.dim()) {
    throw Error(ErrorCode::DimMismatch, "ensemble dimension " + std::to_string(e.dim()) +
                                            " vs POVM dimension " + std::to_string(p.dim()));
  }
}

// Born-rule traces Tr(rho_i pi_m), clamped at 0 against rounding below zero.
RealMatrix born_matrix(const PreparationEnsemble& e, const Povm& p) {
  require_compatible(e, p);
  RealMatrix out(Eigen::Index(e.size()), Eigen::Index(p.size()));
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t m = 0; m < p.size(); ++m) {
      out(Eigen::Index(i), Eigen::Index(m)) =
          std::max(0.0, real_trace_product(e[i].state.matrix(), p[m]));
    }
  }
  return out;
}

void inconsistent(const std::string& what) { throw Error(ErrorCode::NumericalInconsistency, what); }

void check_conditional(const ConditionalTable& c, const std::string& name) {
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index m = 0; m < c.cols(); ++m) {
      if (auto v = c.at(i, m); v && (*v < -kUnitSlack || *v > 1.0 + kUnitSlack)) {
        inconsistent(name + " entry outside [0, 1]: " + std::to_string(*v));
      }
    }
  }
}

}  // namespace

double ConditionalTable::value(Eigen::Index i, Eigen::Index m) const {
  if (i < 0 || m < 0 || i >= rows() || m >= cols() || !defined_(i, m)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "conditional (" + std::to_string(i) + ", " + std::to_string(m) + ") is undefined");
  }
  return values_(i, m);
}

RealMatrix ConditionalTable::filled(double fill) const {
  RealMatrix out = values_;
  for (Eigen::Index i = 0; i < rows(); ++i)
    for (Eigen::Index m = 0; m < cols(); ++m)
      if (!defined_(i, m)) out(i, m) = fill;
  return out;
}

void check_table(const ProbabilityTable& t, double slack) {
  const Eigen::Index rows = t.joint.rows(), cols = t.joint.cols();
  if (t.prep_marginals.size() != rows || t.outcome_marginals.size() != cols ||
      t.predictive.rows() != rows || t.predictive.cols() != cols ||
      t.retrodictive.rows() != rows || t.retrodictive.cols() != cols) {
    inconsistent("table shapes disagree");
  }
  if (t.joint.minCoeff() < -kUnitSlack || t.joint.maxCoeff() > 1.0 + kUnitSlack) {
    inconsistent("joint entry outside [0, 1]");
  }
  if (std::abs(t.joint.sum() - 1.0) > kNormTol + slack) {
    inconsistent("joint sums to " + std::to_string(t.joint.sum()));
  }
  if ((t.joint.rowwise().sum() - t.prep_marginals).cwiseAbs().maxCoeff() > kMarginalTol + slack) {
    inconsistent("row sums of joint disagree with preparation marginals");
  }
  if ((t.joint.colwise().sum().transpose() - t.outcome_marginals).cwiseAbs().maxCoeff() >
      kMarginalTol + slack) {
    inconsistent("column sums of joint disagree with outcome marginals");
  }
  check_conditional(t.predictive, "predictive");
  check_conditional(t.retrodictive, "retrodictive");
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (t.prep_marginals(i) <= tol::kZeroProbability) continue;
    double sum = 0.0;
    for (Eigen::Index m = 0; m < cols; ++m) sum += t.predictive.at(i, m).value_or(0.0);
    if (std::abs(sum - 1.0) > kNormTol + slack) {
      inconsistent("predictive row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
  }
  for (Eigen::Index m = 0; m < cols; ++m) {
    if (t.outcome_marginals(m) <= tol::kZeroProbability) continue;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) sum += t.retrodictive.at(i, m).value_or(0.0);
    if (std::abs(sum - 1.0) > kNormTol) {
      inconsistent("retrodictive column " + std::to_string(m) + " sums to " + std::to_string(sum));
    }
  }
}

ProbabilityTable classical_table(const RealMatrix& joint) {
  if (joint.size() == 0) throw Error(ErrorCode::NotNormalized, "empty joint distribution");
  if (!joint.allFinite() || joint.minCoeff() < 0.0) {
    throw Error(ErrorCode::NotNormalized, "joint distribution has negative or non-finite entries");
  }
  if (std::abs(joint.sum() - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized, "joint distribution sums to " + std::to_string(joint.sum()));
  }
  ProbabilityTable t;
  t.joint = joint;
  t.prep_marginals = joint.rowwise().sum();
  t.outcome_marginals = joint.colwise().sum().transpose();
  t.predictive = ConditionalTable(joint.rows(), joint.cols());
  t.retrodictive = ConditionalTable(joint.rows(), joint.cols());
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    for (Eigen::Index m = 0; m < joint.cols(); ++m) {
      if (t.prep_marginals(i) > tol::kZeroProbability) {
        t.predictive.set(i, m, joint(i, m) / t.prep_marginals(i));
      }
      if (t.outcome_marginals(m) > tol::kZeroProbability) {
        t.retrodictive.set(i, m, joint(i, m) / t.outcome_marginals(m));
      }
    }
  }
  check_table(t);
  return t;
}

RealMatrix quantum_joint(const PreparationEnsemble& e, const Povm& p) {
  return e.priors().asDiagonal() * born_matrix(e, p);
}

RealMatrix predictive(const PreparationEnsemble& e, const Povm& p) { return born_matrix(e, p); }

ConditionalTable retrodictive(const PreparationEnsemble& e, const Povm& p) {
  const RealMatrix born = born_matrix(e, p);
  const ComplexMatrix rho = a_priori_state(e).matrix();
  ConditionalTable out(born.rows(), born.cols());
  for (std::size_t m = 0; m < p.size(); ++m) {
    const Eigen::Index col = Eigen::Index(m);
    const double outcome_prob = real_trace_product(rho, p[m]);
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Eigen::Index row = Eigen::Index(i);
      if (outcome_prob <= tol::kZeroProbability) {
        out.set_undefined(row, col);
      } else {
        out.set(row, col, e[i].prior * born(row, col) / outcome_prob);
      }
    }
  }
  return out;
}

ConditionalTable unbiased_retrodictive(const PreparationEnsemble& e, const Povm& p) {
  if (!is_unbiased(e)) {
    throw Error(ErrorCode::NotUnbiased, "a priori state is not I/D");
  }
  const RealMatrix born = born_matrix(e, p);
  const double d = double(e.dim());
  ConditionalTable out(born.rows(), born.cols());
  for (std::size_t m = 0; m < p.size(); ++m) {
    const Eigen::Index col = Eigen::Index(m);
    const double tr = p[m].trace().real();
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Eigen::Index row = Eigen::Index(i);
      if (tr <= tol::kZeroProbability) {
        out.set_undefined(row, col);
      } else {
        out.set(row, col, d * e[i].prior * born(row, col) / tr);
      }
    }
  }
  const ConditionalTable general = retrodictive(e, p);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index m = 0; m < out.cols(); ++m) {
      const auto a = out.at(i, m), b = general.at(i, m);
      if (a.has_value() != b.has_value() || (a && std::abs(*a - *b) > 1e-12)) {
        inconsistent("unbiased and general retrodictive rules disagree at (" + std::to_string(i) +
                     ", " + std::to_string(m) + ")");
      }
    }
  }
  return out;
}

RealMatrix biased_postselection_predictive(const PreparationEnsemble& e, const Povm& p,
                                           const PostselectionBias& bias) {
  if (bias.size() != p.size()) {
    throw Error(ErrorCode::DimMismatch, std::to_string(bias.size()) + " bias weights for " +
                                            std::to_string(p.size()) + " outcomes");
  }
  RealMatrix weighted = born_matrix(e, p);
  for (std::size_t m = 0; m < p.size(); ++m) weighted.col(Eigen::Index(m)) *= bias[m];
  for (Eigen::Index i = 0; i < weighted.rows(); ++i) {
    const double norm = weighted.row(i).sum();
    if (norm <= tol::kZeroProbability) {
      throw Error(ErrorCode::AllOutcomesDiscarded,
                  "every outcome reachable from preparation " + std::to_string(i) + " is discarded");
    }
    weighted.row(i) /= norm;
  }
  return weighted;
}

ProbabilityTable quantum_table(const PreparationEnsemble& e, const Povm& p) {
  ProbabilityTable t;
  const RealMatrix born = born_matrix(e, p);
  const ComplexMatrix rho = a_priori_state(e).matrix();
  t.joint = e.priors().asDiagonal() * born;
  t.prep_marginals = e.priors();
  t.outcome_marginals.resize(Eigen::Index(p.size()));
  for (std::size_t m = 0; m < p.size(); ++m) {
    t.outcome_marginals(Eigen::Index(m)) = std::max(0.0, real_trace_product(rho, p[m]));
  }
  t.predictive = ConditionalTable(born.rows(), born.cols());
  for (Eigen::Index i = 0; i < born.rows(); ++i)
    for (Eigen::Index m = 0; m < born.cols(); ++m) t.predictive.set(i, m, born(i, m));
  t.retrodictive = retrodictive(e, p);
  check_table(t, p.completeness_defect());
  return t;
}

double bayes_residual(const ProbabilityTable& t) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < t.joint.rows(); ++i) {
    for (Eigen::Index m = 0; m < t.joint.cols(); ++m) {
      const double retro = t.retrodictive.at(i, m).value_or(0.0) * t.outcome_marginals(m);
      const double pred = t.predictive.at(i, m).value_or(0.0) * t.prep_marginals(i);
      worst = std::max(worst, std::abs(retro - pred));
    }
  }
  return worst;
}

}  // namespace retro
