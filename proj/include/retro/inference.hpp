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

// Exact predictive and retrodictive inference over a preparation ensemble
// measured by a POVM. Rows are preparations a_i, columns outcomes b_m.

#pragma once

#include <optional>

#include "retro/state.hpp"
#include "retro/types.hpp"

namespace retro {

/// I x M conditional probabilities where some cells may be undefined because
/// their conditioning event has zero probability. Undefined cells carry no
/// number at all.
class ConditionalTable {
 public:
  ConditionalTable() = default;
  ConditionalTable(Eigen::Index rows, Eigen::Index cols)
      : values_(RealMatrix::Zero(rows, cols)), defined_(Mask::Constant(rows, cols, false)) {}

  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }

  bool defined(Eigen::Index i, Eigen::Index m) const { return defined_(i, m); }
  std::optional<double> at(Eigen::Index i, Eigen::Index m) const {
    if (!defined_(i, m)) return std::nullopt;
    return values_(i, m);
  }
  /// Throws IndexOutOfRange when the cell is undefined.
  double value(Eigen::Index i, Eigen::Index m) const;

  void set(Eigen::Index i, Eigen::Index m, double v) {
    values_(i, m) = v;
    defined_(i, m) = true;
  }
  void set_undefined(Eigen::Index i, Eigen::Index m) {
    values_(i, m) = 0.0;
    defined_(i, m) = false;
  }

  bool all_defined() const { return defined_.all(); }
  /// Values with undefined cells replaced by `fill`.
  RealMatrix filled(double fill) const;

 private:
  using Mask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
  RealMatrix values_;
  Mask defined_;
};

struct ProbabilityTable {
  RealMatrix joint;               // P(a_i, b_m)
  RealVector prep_marginals;      // P(a_i)
  RealVector outcome_marginals;   // P(b_m)
  ConditionalTable predictive;    // P(b_m | a_i)
  ConditionalTable retrodictive;  // P(a_i | b_m)
};

/// Throws NumericalInconsistency if any table invariant fails. `slack` widens
/// the normalization and marginal tolerances, e.g. by a POVM's completeness defect.
void check_table(const ProbabilityTable& t, double slack = 0.0);

/// Marginals and both conditionals from a joint distribution by counting rules.
ProbabilityTable classical_table(const RealMatrix& joint);

/// p_i Tr(rho_i pi_m)
RealMatrix quantum_joint(const PreparationEnsemble& e, const Povm& p);

/// Tr(rho_i pi_m)
RealMatrix predictive(const PreparationEnsemble& e, const Povm& p);

/// p_i Tr(rho_i pi_m) / Tr(rho pi_m), with rho the a priori state. Columns
/// whose outcome probability is <= 1e-12 are undefined.
ConditionalTable retrodictive(const PreparationEnsemble& e, const Povm& p);

/// D p_i Tr(rho_i pi_m) / Tr(pi_m). Requires is_unbiased(e); also computes the
/// general rule and throws NumericalInconsistency if the two differ by > 1e-12.
ConditionalTable unbiased_retrodictive(const PreparationEnsemble& e, const Povm& p);

/// pbar_m Tr(rho_i pi_m) / sum_n pbar_n Tr(rho_i pi_n)
RealMatrix biased_postselection_predictive(const PreparationEnsemble& e, const Povm& p,
                                           const PostselectionBias& bias);

/// Full table assembled from the quantum rules: prep marginals are the priors,
/// outcome marginals Tr(rho pi_m), predictive and retrodictive as above.
ProbabilityTable quantum_table(const PreparationEnsemble& e, const Povm& p);

/// max |P(a|b) P(b) - P(b|a) P(a)|. An undefined conditional contributes 0 for
/// its product, since its conditioning probability is itself 0.
double bayes_residual(const ProbabilityTable& t);

}  // namespace retro
