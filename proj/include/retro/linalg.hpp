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

// Dense spectral primitives for small Hilbert spaces.
//
// Everything here is a free function over Eigen::MatrixBase so that real and
// complex inputs of any precision, maps and block expressions all work. The
// result scalar of anything that can pick up a phase is always complex.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "retro/error.hpp"

namespace retro {

inline constexpr Eigen::Index kMaxDim = 64;

namespace tol {
inline constexpr double kHermitian = 1e-10;   // max-abs of m - m^dagger
inline constexpr double kNegativeEig = 1e-9;  // eigenvalues in [-kNegativeEig, 0) clamp to 0
inline constexpr double kRankCutoff = 1e-9;   // relative to the largest eigenvalue
inline constexpr double kTrace = 1e-10;
inline constexpr double kPovmSum = 1e-9;  // Frobenius
inline constexpr double kOrthonormal = 1e-10;
inline constexpr double kImagResidue = 1e-10;
inline constexpr double kZeroProbability = 1e-12;
}  // namespace tol

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Derived>
using ComplexOf = std::complex<RealOf<Derived>>;

template <typename Derived>
using ComplexMatrixOf = Eigen::Matrix<ComplexOf<Derived>, Eigen::Dynamic, Eigen::Dynamic>;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
template <typename Scalar>
struct Spectrum {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;  // columns

  Eigen::Index dim() const { return eigenvalues.size(); }

  /// V f(diag(lambda)) V^dagger for a scalar function f.
  template <typename F>
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> apply(F&& f) const {
    using C = std::complex<Real>;
    Eigen::Matrix<C, Eigen::Dynamic, 1> mapped(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) mapped(k) = C(f(eigenvalues(k)));
    const auto v = eigenvectors.template cast<C>();
    return v * mapped.asDiagonal() * v.adjoint();
  }
};

/// Throws InvalidMatrix unless `m` is square, 1 <= dim <= kMaxDim and finite.
template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const std::string& what = "matrix") {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidMatrix, what + " is " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()) + ", expected square");
  }
  if (m.rows() < 1 || m.rows() > kMaxDim) {
    throw Error(ErrorCode::InvalidMatrix, what + " dimension " + std::to_string(m.rows()) +
                                              " outside [1, " + std::to_string(kMaxDim) + "]");
  }
  if (!m.allFinite()) throw Error(ErrorCode::InvalidMatrix, what + " has non-finite entries");
}

template <typename DA, typename DB>
void require_same_dim(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                      const std::string& what = "operands") {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimMismatch, what + ": " + std::to_string(a.rows()) + "x" +
                                            std::to_string(a.cols()) + " vs " +
                                            std::to_string(b.rows()) + "x" +
                                            std::to_string(b.cols()));
  }
}

/// max |m - m^dagger|
template <typename Derived>
RealOf<Derived> hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return RealOf<Derived>(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tolerance = tol::kHermitian) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tolerance;
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, const std::string& what = "matrix") {
  require_square(m, what);
  const auto defect = hermiticity_defect(m);
  if (defect > tol::kHermitian) {
    throw Error(ErrorCode::NotHermitian,
                what + " deviates from its adjoint by " + std::to_string(double(defect)));
  }
}

template <typename Derived>
Spectrum<typename Derived::Scalar> eig_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  require_hermitian(m);
  // Symmetrize so the solver sees an exactly self-adjoint input.
  const Dense sym = (m + m.adjoint()) / RealOf<Derived>(2);
  Eigen::SelfAdjointEigenSolver<Dense> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalInconsistency, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace detail {

template <typename Scalar>
void require_psd_spectrum(const Spectrum<Scalar>& s) {
  if (s.dim() > 0 && s.eigenvalues(0) < -tol::kNegativeEig) {
    throw Error(ErrorCode::NotPsd,
                "smallest eigenvalue " + std::to_string(double(s.eigenvalues(0))) + " < -1e-9");
  }
}

template <typename Real>
Real rank_threshold(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& eigenvalues) {
  const Real top = eigenvalues.size() ? std::max(eigenvalues.maxCoeff(), Real(0)) : Real(0);
  return Real(tol::kRankCutoff) * top;
}

}  // namespace detail

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-9, 0) are clamped.
template <typename Derived>
ComplexMatrixOf<Derived> psd_sqrt(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  const auto s = eig_hermitian(m);
  detail::require_psd_spectrum(s);
  return s.apply([](Real l) { return std::sqrt(std::max(l, Real(0))); });
}

/// Moore-Penrose inverse square root: eigenvalues at or below 1e-9 * max map to 0.
template <typename Derived>
ComplexMatrixOf<Derived> psd_pinv_sqrt(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  const auto s = eig_hermitian(m);
  detail::require_psd_spectrum(s);
  const Real cut = detail::rank_threshold(s.eigenvalues);
  return s.apply([cut](Real l) { return l > cut && l > Real(0) ? Real(1) / std::sqrt(l) : Real(0); });
}

/// Orthogonal projector onto the span of eigenvectors above the rank cutoff.
template <typename Derived>
ComplexMatrixOf<Derived> support_projector(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  const auto s = eig_hermitian(m);
  const Real cut = detail::rank_threshold(s.eigenvalues);
  return s.apply([cut](Real l) { return l > cut && l > Real(0) ? Real(1) : Real(0); });
}

template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& m) {
  const auto s = eig_hermitian(m);
  const auto cut = detail::rank_threshold(s.eigenvalues);
  return (s.eigenvalues.array() > cut).count();
}

/// U = exp(-i h duration) for Hermitian h (hbar = 1).
template <typename Derived>
ComplexMatrixOf<Derived> exp_hermitian_generator(const Eigen::MatrixBase<Derived>& h,
                                                 RealOf<Derived> duration) {
  using Real = RealOf<Derived>;
  using C = std::complex<Real>;
  if (!std::isfinite(duration)) throw Error(ErrorCode::InvalidMatrix, "non-finite duration");
  const auto s = eig_hermitian(h);
  return s.apply([duration](Real l) { return std::exp(C(0, -l * duration)); });
}

/// Tr(a b) as sum_jk a_jk b_kj, without forming the product.
template <typename DA, typename DB>
auto trace_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  require_same_dim(a, b, "trace_product");
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimMismatch, "trace_product needs square operands");
  return a.cwiseProduct(b.transpose()).sum();
}

/// Real part of Tr(a b) for Hermitian a, b; throws if the imaginary residue
/// exceeds 1e-10, which can only happen through an upstream bug.
template <typename DA, typename DB>
double real_trace_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  const std::complex<double> t = trace_product(a, b);
  if (std::abs(t.imag()) >= tol::kImagResidue) {
    throw Error(ErrorCode::NumericalInconsistency,
                "trace of Hermitian product has imaginary part " + std::to_string(t.imag()));
  }
  return t.real();
}

/// Trace distance 1/2 ||a - b||_1 for Hermitian a, b.
template <typename DA, typename DB>
RealOf<DA> trace_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  require_same_dim(a, b, "trace_distance");
  using Dense = Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Dense diff = a - b;
  return eig_hermitian(diff).eigenvalues.cwiseAbs().sum() / RealOf<DA>(2);
}

/// ||a - b||_F / ||ref||_F, falling back to the absolute norm when ref is zero.
template <typename DA, typename DB, typename DR>
RealOf<DA> relative_frobenius(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                              const Eigen::MatrixBase<DR>& ref) {
  const RealOf<DA> scale = ref.norm();
  return (a - b).norm() / (scale > RealOf<DA>(0) ? scale : RealOf<DA>(1));
}

}  // namespace retro
