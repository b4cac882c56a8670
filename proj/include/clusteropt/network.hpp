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

#include <optional>
#include <utility>

#include "clusteropt/graph.hpp"
#include "clusteropt/linalg.hpp"

namespace clusteropt {

/// A linear network U = X + iY that fabricates the cluster state of its
/// source graph from independently squeezed inputs. Every instance satisfies
/// the cluster condition Y = V X (up to its construction tolerance) and
/// caches the real split, which all noise formulas consume.
class NetworkUnitary {
 public:
  const ComplexMatrix& unitary() const { return u_; }
  const RealMatrix& real_part() const { return x_; }
  const RealMatrix& imag_part() const { return y_; }
  const AdjacencyGraph& graph() const { return graph_; }

  /// Angles used to synthesize this realization; empty for matrices
  /// ingested via from_matrix.
  const std::optional<AngleVector>& theta() const { return theta_; }

  Eigen::Index mode_count() const { return u_.rows(); }

  /// Wraps an externally produced realization. `tolerance` bounds both the
  /// unitarity residual and the cluster-condition residual; matrices
  /// transcribed at limited print precision need a correspondingly loose
  /// bound.
  static NetworkUnitary from_matrix(AdjacencyGraph graph, ComplexMatrix u,
                                    double tolerance = tol::kUnitarity) {
    if (u.rows() != u.cols() || u.rows() != graph.size()) {
      throw DimensionError("NetworkUnitary: matrix shape does not match graph");
    }
    NetworkUnitary net(std::move(graph), std::move(u), std::nullopt);
    net.validate(tolerance, "NetworkUnitary::from_matrix");
    return net;
  }

 private:
  NetworkUnitary(AdjacencyGraph graph, ComplexMatrix u,
                 std::optional<AngleVector> theta)
      : graph_(std::move(graph)),
        u_(std::move(u)),
        x_(u_.real()),
        y_(u_.imag()),
        theta_(std::move(theta)) {
    detail::ensure_finite(u_, "NetworkUnitary");
  }

  void validate(double tolerance, const char* context) const {
    const double unitarity = unitarity_residual(u_);
    if (unitarity > tolerance) {
      throw ValidationError(std::string(context) + ": unitarity residual " +
                            std::to_string(unitarity) + " exceeds tolerance");
    }
    const double cluster =
        (y_ - graph_.matrix() * x_).cwiseAbs().maxCoeff();
    if (cluster > tolerance) {
      throw ValidationError(std::string(context) +
                            ": cluster-condition residual " +
                            std::to_string(cluster) + " exceeds tolerance");
    }
  }

  friend NetworkUnitary symmetric_unitary(const AdjacencyGraph& g);
  friend NetworkUnitary cluster_unitary(const AdjacencyGraph& g,
                                        const AngleVector& theta);

  AdjacencyGraph graph_;
  ComplexMatrix u_;
  RealMatrix x_;
  RealMatrix y_;
  std::optional<AngleVector> theta_;
};

/// Max-norm residual of the cluster condition Y - V X for the given graph.
inline double verify_cluster_condition(const NetworkUnitary& u,
                                       const AdjacencyGraph& g) {
  if (u.mode_count() != g.size()) {
    throw DimensionError("verify_cluster_condition: size mismatch");
  }
  return (u.imag_part() - g.matrix() * u.real_part()).cwiseAbs().maxCoeff();
}

/// The symmetric realization U = (I + iV)(V^2 + I)^{-1/2}; equals
/// cluster_unitary at theta = 0 and satisfies U = U^T.
inline NetworkUnitary symmetric_unitary(const AdjacencyGraph& g) {
  const Eigen::Index n = g.size();
  const RealMatrix& v = g.matrix();
  const RealMatrix x =
      inv_sqrt_spd(v * v + RealMatrix::Identity(n, n));
  ComplexMatrix u(n, n);
  u.real() = x;
  u.imag() = v * x;
  NetworkUnitary net(g, std::move(u), AngleVector::zero(angle_count(n)));
  net.validate(tol::kUnitarity, "symmetric_unitary");
  return net;
}

/// The full realization family U(theta) = (I + iV)(V^2 + I)^{-1/2} O(theta).
/// Every chart point satisfies the cluster condition; theta moves noise
/// between nullifiers without changing the target graph.
inline NetworkUnitary cluster_unitary(const AdjacencyGraph& g,
                                      const AngleVector& theta) {
  const Eigen::Index n = g.size();
  if (theta.size() != angle_count(n)) {
    throw DimensionError("cluster_unitary: expected n(n-1)/2 = " +
                         std::to_string(angle_count(n)) + " angles, got " +
                         std::to_string(theta.size()));
  }
  const RealMatrix& v = g.matrix();
  const RealMatrix x = inv_sqrt_spd(v * v + RealMatrix::Identity(n, n)) *
                       givens_orthogonal(theta, n);
  ComplexMatrix u(n, n);
  u.real() = x;
  u.imag() = v * x;
  NetworkUnitary net(g, std::move(u), theta);
  net.validate(tol::kUnitarity, "cluster_unitary");
  return net;
}

/// X + V Y: the matrix carrying squeezed p-quadratures onto the nullifiers.
/// For synthesized realizations this equals (V^2 + I)^{1/2} O(theta), hence
/// it is always invertible.
inline RealMatrix cluster_noise_matrix(const NetworkUnitary& u) {
  return u.real_part() + u.graph().matrix() * u.imag_part();
}

}  // namespace clusteropt
