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

// Symmetrized (square-root) rewriting of retrodictive probabilities:
//
//   state_m    = rho^{1/2} pi_m rho^{1/2} / Tr(rho pi_m)
//   effect_i   = rho^{-1/2} p_i rho_i rho^{-1/2}
//   P(a_i|b_m) = Tr(state_m effect_i)
//
// The probabilities match the standard rule, but state_m depends on the
// preparation ensemble through rho. When rho is rank one every state_m
// collapses to rho itself, whatever the outcome.

#pragma once

#include <cstddef>
#include <vector>

#include "retro/state.hpp"
#include "retro/types.hpp"

namespace retro {

struct FsbDecomposition {
  std::vector<DensityOperator> retro_states;  // one per outcome
  std::vector<ComplexMatrix> retro_povm;      // one per preparation
  ComplexMatrix support_projector;            // onto supp(rho); sum of retro_povm
};

/// Throws ImpossibleOutcome when some Tr(rho pi_m) <= 1e-12. Singular rho is
/// handled with the support pseudo-inverse square root.
FsbDecomposition fsb_decompose(const PreparationEnsemble& e, const Povm& p);

/// Tr(state_m effect_i)
double fsb_probability(const FsbDecomposition& d, std::size_t i, std::size_t m);

/// max |fsb_probability - retrodictive| over defined cells.
double fsb_equivalence_residual(const PreparationEnsemble& e, const Povm& p);

struct OutcomePairDistance {
  std::size_t first;
  std::size_t second;
  double fsb;       // 1/2 ||state_m - state_m'||_1
  double standard;  // same for pi_m / Tr(pi_m)
};

struct OutcomeDependenceReport {
  std::vector<OutcomePairDistance> pairs;  // m < m'
  double max_fsb = 0.0;
  double max_standard = 0.0;
};

OutcomeDependenceReport outcome_dependence_report(const PreparationEnsemble& e, const Povm& p);

}  // namespace retro
