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

// Three-party spin-1/2 scenario. Alice prepares the spin along one direction,
// Claire later measures along theta, and Bob finally measures along another
// direction. The question is the probability that Claire found the spin
// parallel to theta, given what Alice did, what Bob saw, or both.
//
// Bloch convention: |n> = cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>
// for polar angle theta from +z and azimuth phi.

#pragma once

#include <Eigen/Core>

#include "retro/types.hpp"

namespace retro {

/// Spin ket for a unit Bloch vector.
Ket bloch_ket(const Eigen::Vector3d& direction);
/// Spin ket for polar angle `theta` and azimuth `phi`; negative theta is allowed.
Ket bloch_ket(double theta, double phi);

class SpinTriadScenario {
 public:
  /// Alice along +z, Bob along +x, Claire at polar angle `theta`, azimuth `phi`.
  explicit SpinTriadScenario(double theta, double phi = 0.0);
  SpinTriadScenario(Eigen::Vector3d prep_direction, Eigen::Vector3d meas_direction, double theta,
                    double phi = 0.0);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  const Eigen::Vector3d& prep_direction() const noexcept { return prep_; }
  const Eigen::Vector3d& meas_direction() const noexcept { return meas_; }

  Ket prepared() const { return bloch_ket(prep_); }
  Ket measured() const { return bloch_ket(meas_); }
  Ket claire_parallel() const;      // |theta>
  Ket claire_antiparallel() const;  // |theta_perp>

 private:
  Eigen::Vector3d prep_;
  Eigen::Vector3d meas_;
  double theta_;
  double phi_;
};

/// |<theta|prep>|^2
double claire_alice_only(const SpinTriadScenario& s);

/// |<theta|meas>|^2
double claire_bob_only(const SpinTriadScenario& s);

/// Bayes over the two exclusive paths prep -> theta -> meas and
/// prep -> theta_perp -> meas. Throws DegenerateConditioning if both paths
/// have probability <= 1e-15.
double claire_both(const SpinTriadScenario& s);

/// Same quantity by a different route: Claire's measurement is treated as a
/// preparation ensemble (collapsed states weighted by their Born probability)
/// which Bob then measures, and the general retrodictive rule is applied.
double claire_both_sequential(const SpinTriadScenario& s);

}  // namespace retro
