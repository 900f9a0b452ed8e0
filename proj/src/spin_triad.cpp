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

#include "retro/spin_triad.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "retro/error.hpp"
#include "retro/inference.hpp"
#include "retro/state.hpp"

namespace retro {

namespace {

constexpr double kUnitTol = 1e-12;

void require_unit(const Eigen::Vector3d& v, const char* what) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorCode::ValidationError, std::string(what) + " is not a unit vector");
  }
}

double overlap_sq(const Ket& a, const Ket& b) { return std::norm(a.dot(b)); }

}  // namespace

Ket bloch_ket(double theta, double phi) {
  Ket v(2);
  v << std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0);
  return v;
}

Ket bloch_ket(const Eigen::Vector3d& direction) {
  require_unit(direction, "Bloch direction");
  const double theta = std::acos(std::clamp(direction.z(), -1.0, 1.0));
  const double phi = std::atan2(direction.y(), direction.x());
  return bloch_ket(theta, phi);
}

SpinTriadScenario::SpinTriadScenario(double theta, double phi)
    : SpinTriadScenario(Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX(), theta, phi) {}

SpinTriadScenario::SpinTriadScenario(Eigen::Vector3d prep_direction, Eigen::Vector3d meas_direction,
                                     double theta, double phi)
    : prep_(std::move(prep_direction)), meas_(std::move(meas_direction)), theta_(theta), phi_(phi) {
  require_unit(prep_, "preparation direction");
  require_unit(meas_, "measurement direction");
  if (!std::isfinite(theta_) || !std::isfinite(phi_)) {
    throw Error(ErrorCode::ValidationError, "Claire's angles must be finite");
  }
  const Ket a = claire_parallel(), b = claire_antiparallel();
  if (std::abs(a.norm() - 1.0) > kUnitTol || std::abs(b.norm() - 1.0) > kUnitTol ||
      std::abs(a.dot(b)) > kUnitTol) {
    throw Error(ErrorCode::NotOrthonormal, "Claire's measurement basis is not orthonormal");
  }
}

Ket SpinTriadScenario::claire_parallel() const { return bloch_ket(theta_, phi_); }

Ket SpinTriadScenario::claire_antiparallel() const {
  Ket v(2);
  v << std::sin(theta_ / 2.0), -std::polar(1.0, phi_) * std::cos(theta_ / 2.0);
  return v;
}

double claire_alice_only(const SpinTriadScenario& s) {
  return overlap_sq(s.claire_parallel(), s.prepared());
}

double claire_bob_only(const SpinTriadScenario& s) {
  return overlap_sq(s.claire_parallel(), s.measured());
}

double claire_both(const SpinTriadScenario& s) {
  const Ket a = s.prepared(), b = s.measured();
  const Ket c = s.claire_parallel(), c_perp = s.claire_antiparallel();
  const double via_parallel = overlap_sq(b, c) * overlap_sq(c, a);
  const double via_antiparallel = overlap_sq(b, c_perp) * overlap_sq(c_perp, a);
  const double total = via_parallel + via_antiparallel;
  if (total <= 1e-15) {
    throw Error(ErrorCode::DegenerateConditioning,
                "no path from the preparation reaches the final outcome");
  }
  return via_parallel / total;
}

double claire_both_sequential(const SpinTriadScenario& s) {
  const Ket a = s.prepared();
  const Ket c = s.claire_parallel(), c_perp = s.claire_antiparallel();
  const double p_parallel = overlap_sq(c, a);
  // The collapsed state after Claire's ideal measurement, weighted by its
  // Born probability, is what Bob measures.
  const PreparationEnsemble after_claire =
      pure_ensemble({p_parallel, 1.0 - p_parallel}, {c, c_perp}, {"theta", "theta_perp"});
  const Ket b = s.measured();
  Ket b_perp(2);
  b_perp << -std::conj(b(1)), std::conj(b(0));
  const Povm bob = projective_povm({b, b_perp}, {"meas", "meas_perp"});
  const auto posterior = retrodictive(after_claire, bob).at(0, 0);
  if (!posterior) {
    throw Error(ErrorCode::DegenerateConditioning,
                "no path from the preparation reaches the final outcome");
  }
  return *posterior;
}

}  // namespace retro
