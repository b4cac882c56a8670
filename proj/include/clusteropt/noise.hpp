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

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "clusteropt/graph.hpp"
#include "clusteropt/linalg.hpp"
#include "clusteropt/network.hpp"

namespace clusteropt {

/// Per-mode squeezed-quadrature variances in dB relative to shot noise;
/// negative means squeezed. Variance ratios k_i = 10^(db_i / 10) with the
/// vacuum normalized to 1 per quadrature. Positive dB (anti-squeezed input)
/// is permitted. Modes are p-squeezed: x carries K^{-1/2}, p carries K^{1/2}.
class SqueezingProfile {
 public:
  explicit SqueezingProfile(std::vector<double> db) : db_(std::move(db)) {
    k_.resize(static_cast<Eigen::Index>(db_.size()));
    for (std::size_t i = 0; i < db_.size(); ++i) {
      if (!std::isfinite(db_[i])) {
        throw ValidationError("SqueezingProfile: non-finite dB entry");
      }
      k_[static_cast<Eigen::Index>(i)] = std::pow(10.0, db_[i] / 10.0);
    }
  }

  static SqueezingProfile vacuum(Eigen::Index n) {
    return SqueezingProfile(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  }

  Eigen::Index size() const { return k_.size(); }
  const std::vector<double>& db() const { return db_; }

  /// Diagonal of K: squeezed-quadrature variance ratios, all > 0.
  const RealVector& k() const { return k_; }

 private:
  std::vector<double> db_;
  RealVector k_;
};

/// Diagonal of the squeezing matrix K for the given dB values.
inline RealVector squeezing_to_k(const std::vector<double>& db) {
  return SqueezingProfile(db).k();
}

/// Nullifier variances for vacuum inputs: diag(V^2 + I). Independent of the
/// network realization.
inline RealVector shot_noise_variances(const AdjacencyGraph& g) {
  return (g.matrix().array().square().rowwise().sum() + 1.0).matrix();
}

/// Nullifier variances of the realization U(theta) with squeezed inputs:
/// the diagonal of (V^2+I)^{1/2} O K O^T (V^2+I)^{1/2}, evaluated as the
/// k-weighted squared rows of M = (V^2+I)^{1/2} O.
inline RealVector nullifier_variances(const AdjacencyGraph& g,
                                      const AngleVector& theta,
                                      const SqueezingProfile& profile) {
  const Eigen::Index n = g.size();
  if (profile.size() != n) {
    throw DimensionError("nullifier_variances: profile length " +
                         std::to_string(profile.size()) +
                         " != mode count " + std::to_string(n));
  }
  const RealMatrix& v = g.matrix();
  const RealMatrix m = sqrt_spd(v * v + RealMatrix::Identity(n, n)) *
                       givens_orthogonal(theta, n);
  return m.array().square().matrix() * profile.k();
}

struct NullifierReport {
  RealVector variances;
  RealVector shot;
  RealVector normalized;
  double f1 = 0.0;
  double f1_alt = 0.0;
};

inline NullifierReport nullifier_report(const AdjacencyGraph& g,
                                        const AngleVector& theta,
                                        const SqueezingProfile& profile) {
  NullifierReport report;
  report.variances = nullifier_variances(g, theta, profile);
  report.shot = shot_noise_variances(g);
  report.normalized = report.variances.cwiseQuotient(report.shot);
  report.f1 = report.normalized.mean();
  report.f1_alt = (report.variances - report.shot).mean();
  return report;
}

/// Mean normalized nullifier variance. 1 for vacuum inputs; k for a uniform
/// profile k regardless of theta.
inline double fitness_f1(const AdjacencyGraph& g, const AngleVector& theta,
                         const SqueezingProfile& profile) {
  return nullifier_report(g, theta, profile).f1;
}

/// Mean of (variance - shot); 0 for vacuum inputs.
inline double fitness_f1_alt(const AdjacencyGraph& g, const AngleVector& theta,
                             const SqueezingProfile& profile) {
  return nullifier_report(g, theta, profile).f1_alt;
}

/// Symplectic transform of the per-mode p-squeezing operation:
/// diag(K^{-1/2}, K^{1/2}) on (x | p).
inline RealMatrix squeezer_symplectic(const SqueezingProfile& profile) {
  const Eigen::Index n = profile.size();
  RealMatrix s = RealMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double root_k = std::sqrt(profile.k()[i]);
    s(i, i) = 1.0 / root_k;
    s(n + i, n + i) = root_k;
  }
  return s;
}

/// Sigma' = S Sigma S^T. S must be symplectic (residual < 1e-8) and Sigma
/// symmetric positive semidefinite; tolerances scale with the magnitude of
/// Sigma's entries.
inline RealMatrix covariance_propagate(const RealMatrix& s,
                                       const RealMatrix& sigma_in) {
  if (sigma_in.rows() != sigma_in.cols() || s.rows() != sigma_in.rows() ||
      s.rows() != s.cols()) {
    throw DimensionError("covariance_propagate: shape mismatch");
  }
  if (check_symplectic(s) > 1e-8) {
    throw ValidationError("covariance_propagate: transform not symplectic");
  }
  const double scale = std::max(1.0, sigma_in.cwiseAbs().maxCoeff());
  if (symmetry_residual(sigma_in) > 1e-10 * scale) {
    throw ValidationError("covariance_propagate: covariance not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sigma_in,
                                                   Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw ValidationError(
        "covariance_propagate: covariance not positive semidefinite");
  }
  return s * sigma_in * s.transpose();
}

/// Row vector d_i over (x | p) with delta_i = p_i - sum_l V_il x_l, so that
/// the nullifier variance reads d_i Sigma d_i^T.
inline Eigen::RowVectorXd nullifier_row(const AdjacencyGraph& g,
                                        Eigen::Index i) {
  const Eigen::Index n = g.size();
  if (i < 0 || i >= n) {
    throw DimensionError("nullifier_row: index out of range");
  }
  Eigen::RowVectorXd d = Eigen::RowVectorXd::Zero(2 * n);
  d.head(n) = -g.matrix().row(i);
  d(n + i) = 1.0;
  return d;
}

/// Objective factory for optimizer loops: precomputes (V^2+I)^{1/2} and the
/// shot baseline once; each evaluation costs one Givens chart walk and an
/// n x n product.
inline std::function<double(const AngleVector&)> make_f1_objective(
    const AdjacencyGraph& g, const SqueezingProfile& profile) {
  const Eigen::Index n = g.size();
  if (profile.size() != n) {
    throw DimensionError("make_f1_objective: profile length != mode count");
  }
  const RealMatrix& v = g.matrix();
  RealMatrix sqrt_m = sqrt_spd(v * v + RealMatrix::Identity(n, n));
  RealVector weights = profile.k();
  RealVector shot = shot_noise_variances(g);
  return [n, sqrt_m = std::move(sqrt_m), weights = std::move(weights),
          shot = std::move(shot)](const AngleVector& theta) {
    const RealMatrix m = sqrt_m * givens_orthogonal(theta, n);
    return (m.array().square().matrix() * weights)
        .cwiseQuotient(shot)
        .mean();
  };
}

}  // namespace clusteropt
