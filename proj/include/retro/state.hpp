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

// Validated quantum value types. Every constructor checks its invariants and
// throws retro::Error on violation, so an instance that exists is valid.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "retro/types.hpp"

namespace retro {

/// Hermitian, PSD, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  /// |psi><psi| / <psi|psi>. Throws InvalidMatrix for a zero vector.
  static DensityOperator pure(const Ket& psi);
  static DensityOperator maximally_mixed(Eigen::Index dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  /// Tr(rho^2)
  double purity() const;

 private:
  ComplexMatrix m_;
};

struct EnsembleMember {
  double prior;
  DensityOperator state;
};

/// Alice's preparations {p_i, rho_i}. Priors sum to one within 1e-10.
class PreparationEnsemble {
 public:
  explicit PreparationEnsemble(std::vector<EnsembleMember> members,
                               std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return members_.size(); }
  Eigen::Index dim() const noexcept { return members_.front().state.dim(); }
  const EnsembleMember& operator[](std::size_t i) const { return members_.at(i); }
  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  RealVector priors() const;

 private:
  std::vector<EnsembleMember> members_;
  std::vector<std::string> labels_;
};

/// Positive operators summing to the identity within 1e-9 (Frobenius).
/// Incomplete sets are rejected rather than renormalized.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return elements_.size(); }
  Eigen::Index dim() const noexcept { return elements_.front().rows(); }
  const ComplexMatrix& operator[](std::size_t m) const { return elements_.at(m); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// ||sum_m pi_m - I||_F as measured at construction.
  double completeness_defect() const noexcept { return completeness_defect_; }

 private:
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
  double completeness_defect_ = 0.0;
};

/// Nonnegative per-outcome recording weights. Only ratios matter.
class PostselectionBias {
 public:
  explicit PostselectionBias(std::vector<double> weights);
  static PostselectionBias uniform(std::size_t outcomes);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t m) const { return weights_.at(m); }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// sum_i p_i rho_i
DensityOperator a_priori_state(const PreparationEnsemble& e);

/// True iff the a priori state equals I/D (max-abs within 1e-9) on the full space.
bool is_unbiased(const PreparationEnsemble& e);

/// {|m><m|} from an orthonormal basis spanning the space.
Povm projective_povm(const std::vector<Ket>& basis, std::vector<std::string> labels = {});

/// pi / Tr(pi). Throws ZeroTraceElement when Tr(pi) <= 1e-12.
DensityOperator retrodictive_state(const ComplexMatrix& element);
DensityOperator retrodictive_state(const Povm& p, std::size_t outcome);

/// Ensemble of pure states with the given priors.
PreparationEnsemble pure_ensemble(const std::vector<double>& priors, const std::vector<Ket>& kets,
                                  std::vector<std::string> labels = {});

namespace kets {

Ket up();
Ket down();
Ket right();  // (|up> + |down>)/sqrt2
Ket left();   // (|up> - |down>)/sqrt2
Ket basis(Eigen::Index dim, Eigen::Index k);
std::vector<Ket> computational_basis(Eigen::Index dim);
/// Column k of the unitary DFT matrix, entries exp(2 pi i j k / d) / sqrt(d).
std::vector<Ket> fourier_basis(Eigen::Index dim);

}  // namespace kets

}  // namespace retro
