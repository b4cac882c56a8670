// Copyright 2026 The clusteropt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "clusteropt/errors.hpp"

namespace clusteropt {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Default numerical tolerances. Operations that expose a tolerance
/// parameter default to these values.
namespace tol {
inline constexpr double kSymmetry = 1e-12;
inline constexpr double kSymplectic = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kEigenvalueFloor = 1e-12;
}  // namespace tol

/// Reduces an angle to the canonical interval [-pi, pi).
inline double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle + std::numbers::pi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  return wrapped - std::numbers::pi;
}

namespace detail {

template <typename Derived>
void ensure_finite(const Eigen::MatrixBase<Derived>& m, const char* context) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(context) + ": non-finite entries");
  }
}

}  // namespace detail

/// Number of free rotation angles of an n-mode network: n(n-1)/2.
inline Eigen::Index angle_count(Eigen::Index modes) {
  return modes * (modes - 1) / 2;
}

/// Plane-rotation angles, each reduced to [-pi, pi) on construction.
class AngleVector {
 public:
  AngleVector() = default;

  explicit AngleVector(RealVector values) : values_(std::move(values)) {
    detail::ensure_finite(values_, "AngleVector");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      values_[i] = wrap_angle(values_[i]);
    }
  }

  explicit AngleVector(const std::vector<double>& values)
      : AngleVector(values.empty()
                        ? RealVector()
                        : RealVector(Eigen::Map<const RealVector>(
                              values.data(),
                              static_cast<Eigen::Index>(values.size())))) {}

  static AngleVector zero(Eigen::Index dim) {
    return AngleVector(RealVector::Zero(dim));
  }

  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }
  const RealVector& values() const { return values_; }

 private:
  RealVector values_;
};

/// Max-norm of M - M^T. Throws on non-square input.
inline double symmetry_residual(const RealMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("symmetry_residual: matrix not square");
  }
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

namespace detail {

inline RealMatrix spd_eigen_power(const RealMatrix& m, double exponent,
                                  double symmetry_tol, const char* context) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(context) + ": matrix not square");
  }
  if (symmetry_residual(m) > symmetry_tol) {
    throw ValidationError(std::string(context) + ": matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(
      RealMatrix(0.5 * (m + m.transpose())));
  if (solver.info() != Eigen::Success) {
    throw SingularMatrixError(std::string(context) +
                              ": eigendecomposition failed");
  }
  const RealVector& eigenvalues = solver.eigenvalues();
  if (eigenvalues.minCoeff() <= tol::kEigenvalueFloor) {
    throw SingularMatrixError(std::string(context) +
                              ": eigenvalue at or below tolerance");
  }
  RealVector powered = eigenvalues.array().pow(exponent).matrix();
  return solver.eigenvectors() * powered.asDiagonal() *
         solver.eigenvectors().transpose();
}

}  // namespace detail

/// M^{-1/2} of a symmetric positive-definite matrix, via eigendecomposition
/// of the symmetrized input. The result R is symmetric and satisfies
/// R M R = I up to roundoff.
inline RealMatrix inv_sqrt_spd(const RealMatrix& m,
                               double symmetry_tol = tol::kSymmetry) {
  return detail::spd_eigen_power(m, -0.5, symmetry_tol, "inv_sqrt_spd");
}

/// M^{1/2} of a symmetric positive-definite matrix.
inline RealMatrix sqrt_spd(const RealMatrix& m,
                           double symmetry_tol = tol::kSymmetry) {
  return detail::spd_eigen_power(m, 0.5, symmetry_tol, "sqrt_spd");
}

/// Special-orthogonal matrix from the angle chart
/// O = G_{0,1} G_{0,2} ... G_{n-2,n-1}, planes ordered lexicographically.
///
/// Convention: G(i,j,t) maps e_i -> cos(t) e_i + sin(t) e_j and
/// e_j -> -sin(t) e_i + cos(t) e_j, so n = 2, t = pi/2 gives [[0,-1],[1,0]].
/// det O = +1 for every chart point. The det = -1 coset is unreachable but
/// equivalent for diagonal-congruence purposes: (O F) K (O F)^T = O K O^T
/// for any diagonal sign flip F and diagonal K.
inline RealMatrix givens_orthogonal(const AngleVector& theta, Eigen::Index n) {
  if (n < 1) {
    throw DimensionError("givens_orthogonal: mode count must be positive");
  }
  if (theta.size() != angle_count(n)) {
    throw DimensionError("givens_orthogonal: expected n(n-1)/2 = " +
                         std::to_string(angle_count(n)) + " angles, got " +
                         std::to_string(theta.size()));
  }
  RealMatrix o = RealMatrix::Identity(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++k) {
      const double c = std::cos(theta[k]);
      const double s = std::sin(theta[k]);
      // Right-multiplication by G(i,j,theta_k) touches columns i and j only.
      const RealVector col_i = o.col(i);
      o.col(i) = c * col_i + s * o.col(j);
      o.col(j) = -s * col_i + c * o.col(j);
    }
  }
  return o;
}

/// Max-norm residual of U U^dagger - I.
inline double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    throw DimensionError("unitarity_residual: matrix not square");
  }
  ComplexMatrix gram = u * u.adjoint();
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

/// Quadrature-space transform of a passive network U = X + iY: the block
/// matrix [[X, -Y], [Y, X]] acting on stacked quadratures
/// (x_1..x_N, p_1..p_N).
inline RealMatrix quadrature_symplectic(const ComplexMatrix& u,
                                        double unitarity_tol = tol::kUnitarity) {
  const double residual = unitarity_residual(u);
  if (residual > unitarity_tol) {
    throw ValidationError("quadrature_symplectic: input not unitary (residual " +
                          std::to_string(residual) + ")");
  }
  const Eigen::Index n = u.rows();
  RealMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = u.real();
  s.topRightCorner(n, n) = -u.imag();
  s.bottomLeftCorner(n, n) = u.imag();
  s.bottomRightCorner(n, n) = u.real();
  return s;
}

/// Max-norm residual of the symplectic condition S J S^T = J, with
/// J = [[0, I], [-I, 0]] in (x | p) ordering. For the passive block form
/// [[X, -Y], [Y, X]] the nonzero blocks of the residual are exactly
/// X X^T + Y Y^T - I and Y X^T - X Y^T. Returns 0 iff S is symplectic.
inline double check_symplectic(const RealMatrix& s) {
  if (s.rows() != s.cols()) {
    throw DimensionError("check_symplectic: matrix not square");
  }
  if (s.rows() % 2 != 0) {
    throw DimensionError("check_symplectic: odd dimension");
  }
  const Eigen::Index n = s.rows() / 2;
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return (s * j * s.transpose() - j).cwiseAbs().maxCoeff();
}

}  // namespace clusteropt
