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

// Unitary evolution under a time-independent Hamiltonian (hbar = 1).
//
// Predictive states carry an initial boundary condition and only move forward
// from their anchor time; retrodictive states carry a final boundary condition
// and only move backward. Both use the same generator: a retrodictive state is
// conjugated by U(t - anchor) with a negative duration.

#pragma once

#include <cstddef>
#include <vector>

#include "retro/state.hpp"
#include "retro/types.hpp"

namespace retro {

enum class TimeDirection { Predictive, Retrodictive };

struct EvolvingState {
  DensityOperator state;
  double anchor_time = 0.0;
  TimeDirection direction = TimeDirection::Predictive;
};

/// U(t, t0) = exp(-i h (t - t0))
ComplexMatrix propagator(const ComplexMatrix& h, double t, double t0);

/// U rho U^dagger with U = U(t, anchor). Throws TimeDirectionViolation when a
/// predictive state is queried before its anchor or a retrodictive one after.
DensityOperator evolve(const EvolvingState& s, const ComplexMatrix& h, double t);

/// <m(t)|i(t)> with |i> evolved forward from t0 and |m> backward from t1.
/// Requires t0 <= t <= t1.
Complex transition_amplitude(const Ket& i_state, const Ket& m_state, const ComplexMatrix& h,
                             double t0, double t1, double t);

/// Tr(U rho U^dagger pi_m), U = U(t1, t0). Requires t1 >= t0.
double predictive_outcome_probability(const DensityOperator& prepared, const ComplexMatrix& h,
                                      double t0, double t1, const Povm& povm, std::size_t m);
double predictive_outcome_probability(const Ket& prepared, const ComplexMatrix& h, double t0,
                                      double t1, const Povm& povm, std::size_t m);

/// |<i|U^dagger(t1, t0)|m>|^2 for a complete orthonormal, equiprobable
/// preparation basis. The measured state is evolved backward to t0.
double retrodictive_preparation_probability(const Ket& m_state, const ComplexMatrix& h, double t0,
                                            double t1, const std::vector<Ket>& basis, std::size_t i);

/// Evenly spaced sample times strictly inside (t0, t1).
std::vector<double> interior_times(double t0, double t1, std::size_t samples);

/// max_t |c(t) - c(t0)| over t0, t1 and `samples` interior times.
double amplitude_invariance_deviation(const Ket& i_state, const Ket& m_state,
                                      const ComplexMatrix& h, double t0, double t1,
                                      std::size_t samples);

/// Mixed-state analogue: max_t |Tr(rho_m(t) rho_i(t)) - Tr(rho_m(t0) rho_i(t0))|
/// where rho_m is the retrodictive state of `element` evolved back from t1.
double overlap_invariance_deviation(const DensityOperator& prepared, const ComplexMatrix& element,
                                    const ComplexMatrix& h, double t0, double t1,
                                    std::size_t samples);

}  // namespace retro
