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

#include "retro/state.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "retro/linalg.hpp"

namespace retro {

namespace {

std::vector<std::string> default_labels(std::vector<std::string> labels, std::size_t n,
                                        const char* prefix, const char* what) {
  if (labels.empty()) {
    for (std::size_t k = 0; k < n; ++k) labels.push_back(prefix + std::to_string(k));
  }
  if (labels.size() != n) {
    throw Error(ErrorCode::ValidationError, std::string(what) + ": " + std::to_string(labels.size()) +
                                                " labels for " + std::to_string(n) + " entries");
  }
  return labels;
}

void require_psd(const ComplexMatrix& m, const std::string& what) {
  const auto s = eig_hermitian(m);
  if (s.eigenvalues(0) < -tol::kNegativeEig) {
    throw Error(ErrorCode::NotPsd, what + " has eigenvalue " + std::to_string(s.eigenvalues(0)));
  }
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_hermitian(m_, "density operator");
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0)) > tol::kTrace) {
    throw Error(ErrorCode::NotNormalized,
                "density operator trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  require_psd(m_, "density operator");
}

DensityOperator DensityOperator::pure(const Ket& psi) {
  const double n = psi.norm();
  if (!(n > 0.0) || !psi.allFinite()) throw Error(ErrorCode::InvalidMatrix, "zero or non-finite ket");
  const Ket unit = psi / n;
  return DensityOperator(projector(unit));
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / double(dim));
}

double DensityOperator::purity() const { return real_trace_product(m_, m_); }

PreparationEnsemble::PreparationEnsemble(std::vector<EnsembleMember> members,
                                         std::vector<std::string> labels)
    : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::ValidationError, "ensemble has no members");
  labels_ = default_labels(std::move(labels), members_.size(), "a", "ensemble");
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const double p = members_[i].prior;
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(ErrorCode::NotNormalized,
                  "ensemble prior " + std::to_string(i) + " = " + std::to_string(p) + " outside [0, 1]");
    }
    if (members_[i].state.dim() != dim()) {
      throw Error(ErrorCode::DimMismatch, "ensemble member " + std::to_string(i) + " has dimension " +
                                              std::to_string(members_[i].state.dim()));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kTrace) {
    throw Error(ErrorCode::NotNormalized,
                "ensemble priors sum to " + std::to_string(total) + ", expected 1 (normalization)");
  }
}

RealVector PreparationEnsemble::priors() const {
  RealVector p(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) p(Eigen::Index(i)) = members_[i].prior;
  return p;
}

Povm::Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::ValidationError, "POVM has no elements");
  labels_ = default_labels(std::move(labels), elements_.size(), "b", "POVM");
  const Eigen::Index d = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t m = 0; m < elements_.size(); ++m) {
    const std::string what = "POVM element " + std::to_string(m);
    require_hermitian(elements_[m], what);
    if (elements_[m].rows() != d) {
      throw Error(ErrorCode::DimMismatch, what + " has dimension " + std::to_string(elements_[m].rows()));
    }
    require_psd(elements_[m], what);
    sum += elements_[m];
  }
  const double defect = (sum - ComplexMatrix::Identity(d, d)).norm();
  if (defect > tol::kPovmSum) {
    throw Error(ErrorCode::IncompletePovm,
                "POVM completeness violated: ||sum - I||_F = " + std::to_string(defect));
  }
  completeness_defect_ = defect;
}

PostselectionBias::PostselectionBias(std::vector<double> weights) : weights_(std::move(weights)) {
  bool any_positive = false;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::ValidationError, "postselection weight " + std::to_string(w) + " is negative");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::ValidationError, "postselection bias has no positive weight");
}

PostselectionBias PostselectionBias::uniform(std::size_t outcomes) {
  return PostselectionBias(std::vector<double>(outcomes, 1.0));
}

DensityOperator a_priori_state(const PreparationEnsemble& e) {
  ComplexMatrix rho = ComplexMatrix::Zero(e.dim(), e.dim());
  for (const auto& member : e.members()) rho += member.prior * member.state.matrix();
  return DensityOperator(std::move(rho));
}

bool is_unbiased(const PreparationEnsemble& e) {
  const auto rho = a_priori_state(e).matrix();
  const Eigen::Index d = e.dim();
  const ComplexMatrix target = ComplexMatrix::Identity(d, d) / double(d);
  return (rho - target).cwiseAbs().maxCoeff() <= 1e-9;
}

Povm projective_povm(const std::vector<Ket>& basis, std::vector<std::string> labels) {
  if (basis.empty()) throw Error(ErrorCode::IncompleteBasis, "empty basis");
  const Eigen::Index d = basis.front().size();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != d) throw Error(ErrorCode::DimMismatch, "basis vectors differ in length");
    for (std::size_t k = 0; k <= j; ++k) {
      const Complex g = basis[k].dot(basis[j]);
      const Complex expected = j == k ? Complex(1.0) : Complex(0.0);
      if (std::abs(g - expected) > tol::kOrthonormal) {
        throw Error(ErrorCode::NotOrthonormal, "<" + std::to_string(k) + "|" + std::to_string(j) +
                                                   "> has magnitude " + std::to_string(std::abs(g)));
      }
    }
  }
  if (Eigen::Index(basis.size()) != d) {
    throw Error(ErrorCode::IncompleteBasis,
                std::to_string(basis.size()) + " vectors cannot span dimension " + std::to_string(d));
  }
  std::vector<ComplexMatrix> elements;
  elements.reserve(basis.size());
  for (const auto& v : basis) elements.push_back(projector(v));
  return Povm(std::move(elements), std::move(labels));
}

DensityOperator retrodictive_state(const ComplexMatrix& element) {
  require_hermitian(element, "POVM element");
  const double tr = element.trace().real();
  if (tr <= tol::kZeroProbability) {
    throw Error(ErrorCode::ZeroTraceElement, "element trace " + std::to_string(tr) + " <= 1e-12");
  }
  return DensityOperator(element / tr);
}

DensityOperator retrodictive_state(const Povm& p, std::size_t outcome) {
  if (outcome >= p.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "outcome " + std::to_string(outcome) + " of " +
                                                std::to_string(p.size()));
  }
  return retrodictive_state(p[outcome]);
}

PreparationEnsemble pure_ensemble(const std::vector<double>& priors, const std::vector<Ket>& kets,
                                  std::vector<std::string> labels) {
  if (priors.size() != kets.size()) throw Error(ErrorCode::DimMismatch, "priors and kets differ in count");
  std::vector<EnsembleMember> members;
  for (std::size_t i = 0; i < priors.size(); ++i) {
    members.push_back({priors[i], DensityOperator::pure(kets[i])});
  }
  return PreparationEnsemble(std::move(members), std::move(labels));
}

namespace kets {

Ket up() { return basis(2, 0); }
Ket down() { return basis(2, 1); }
Ket right() { return (up() + down()) / std::sqrt(2.0); }
Ket left() { return (up() - down()) / std::sqrt(2.0); }

Ket basis(Eigen::Index dim, Eigen::Index k) {
  Ket v = Ket::Zero(dim);
  v(k) = 1.0;
  return v;
}

std::vector<Ket> computational_basis(Eigen::Index dim) {
  std::vector<Ket> out;
  for (Eigen::Index k = 0; k < dim; ++k) out.push_back(basis(dim, k));
  return out;
}

std::vector<Ket> fourier_basis(Eigen::Index dim) {
  std::vector<Ket> out;
  const double norm = 1.0 / std::sqrt(double(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    Ket v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      v(j) = norm * std::polar(1.0, 2.0 * std::numbers::pi * double(j * k) / double(dim));
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace kets

}  // namespace retro
