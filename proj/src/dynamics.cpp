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

#include "retro/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retro/linalg.hpp"

namespace retro {

namespace {

void require_ordered(double t0, double t1) {
  if (!(t1 >= t0)) {
    throw Error(ErrorCode::TimeDirectionViolation,
                "t1 = " + std::to_string(t1) + " precedes t0 = " + std::to_string(t0));
  }
}

void require_ket_dim(const Ket& v, const ComplexMatrix& h, const char* what) {
  if (v.size() != h.rows()) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + " has length " + std::to_string(v.size()) +
                                            ", Hamiltonian is " + std::to_string(h.rows()));
  }
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  const ComplexMatrix out = u * rho * u.adjoint();
  return (out + out.adjoint()) / 2.0;
}

}  // namespace

ComplexMatrix propagator(const ComplexMatrix& h, double t, double t0) {
  return exp_hermitian_generator(h, t - t0);
}

DensityOperator evolve(const EvolvingState& s, const ComplexMatrix& h, double t) {
  require_same_dim(s.state.matrix(), h, "evolve");
  const bool forward = s.direction == TimeDirection::Predictive;
  if (forward ? t < s.anchor_time : t > s.anchor_time) {
    throw Error(ErrorCode::TimeDirectionViolation,
                std::string(forward ? "predictive" : "retrodictive") + " state anchored at " +
                    std::to_string(s.anchor_time) + " queried at " + std::to_string(t));
  }
  return DensityOperator(conjugate(propagator(h, t, s.anchor_time), s.state.matrix()));
}

Complex transition_amplitude(const Ket& i_state, const Ket& m_state, const ComplexMatrix& h,
                             double t0, double t1, double t) {
  if (!(t0 <= t && t <= t1)) {
    throw Error(ErrorCode::TimeOutOfRange, "t = " + std::to_string(t) + " outside [" +
                                               std::to_string(t0) + ", " + std::to_string(t1) + "]");
  }
  require_ket_dim(i_state, h, "prepared ket");
  require_ket_dim(m_state, h, "measured ket");
  const Ket i_t = propagator(h, t, t0) * i_state;
  const Ket m_t = propagator(h, t, t1) * m_state;
  return m_t.dot(i_t);
}

double predictive_outcome_probability(const DensityOperator& prepared, const ComplexMatrix& h,
                                      double t0, double t1, const Povm& povm, std::size_t m) {
  require_ordered(t0, t1);
  require_same_dim(prepared.matrix(), h, "prepared state vs Hamiltonian");
  require_same_dim(povm[0], h, "POVM vs Hamiltonian");
  if (m >= povm.size()) throw Error(ErrorCode::IndexOutOfRange, "outcome " + std::to_string(m));
  const ComplexMatrix evolved = conjugate(propagator(h, t1, t0), prepared.matrix());
  return std::max(0.0, real_trace_product(evolved, povm[m]));
}

double predictive_outcome_probability(const Ket& prepared, const ComplexMatrix& h, double t0,
                                      double t1, const Povm& povm, std::size_t m) {
  return predictive_outcome_probability(DensityOperator::pure(prepared), h, t0, t1, povm, m);
}

double retrodictive_preparation_probability(const Ket& m_state, const ComplexMatrix& h, double t0,
                                            double t1, const std::vector<Ket>& basis, std::size_t i) {
  require_ordered(t0, t1);
  require_ket_dim(m_state, h, "measured ket");
  projective_povm(basis);  // validates orthonormality and completeness
  if (i >= basis.size()) throw Error(ErrorCode::IndexOutOfRange, "preparation " + std::to_string(i));
  const Ket m_back = propagator(h, t0, t1) * m_state.normalized();
  return std::norm(basis[i].dot(m_back));
}

std::vector<double> interior_times(double t0, double t1, std::size_t samples) {
  std::vector<double> out;
  out.reserve(samples);
  for (std::size_t k = 1; k <= samples; ++k) {
    out.push_back(t0 + (t1 - t0) * double(k) / double(samples + 1));
  }
  return out;
}

double amplitude_invariance_deviation(const Ket& i_state, const Ket& m_state,
                                      const ComplexMatrix& h, double t0, double t1,
                                      std::size_t samples) {
  const Complex c0 = transition_amplitude(i_state, m_state, h, t0, t1, t0);
  double worst = std::abs(transition_amplitude(i_state, m_state, h, t0, t1, t1) - c0);
  for (double t : interior_times(t0, t1, samples)) {
    worst = std::max(worst, std::abs(transition_amplitude(i_state, m_state, h, t0, t1, t) - c0));
  }
  return worst;
}

double overlap_invariance_deviation(const DensityOperator& prepared, const ComplexMatrix& element,
                                    const ComplexMatrix& h, double t0, double t1,
                                    std::size_t samples) {
  require_ordered(t0, t1);
  const EvolvingState forward{prepared, t0, TimeDirection::Predictive};
  const EvolvingState backward{retrodictive_state(element), t1, TimeDirection::Retrodictive};
  auto overlap = [&](double t) {
    return real_trace_product(evolve(backward, h, t).matrix(), evolve(forward, h, t).matrix());
  };
  const double base = overlap(t0);
  double worst = std::abs(overlap(t1) - base);
  for (double t : interior_times(t0, t1, samples)) worst = std::max(worst, std::abs(overlap(t) - base));
  return worst;
}

}  // namespace retro
