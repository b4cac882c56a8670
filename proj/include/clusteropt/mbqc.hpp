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

#include <algorithm>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "clusteropt/errors.hpp"
#include "clusteropt/graph.hpp"
#include "clusteropt/linalg.hpp"
#include "clusteropt/network.hpp"
#include "clusteropt/noise.hpp"

namespace clusteropt {

/// Homodyne measurement layout for a single-input computation on an n-mode
/// cluster. Global mode indices: 0 is the input mode, 1..n are the cluster
/// modes. Every mode is rotated by its d_meas phase and then read out in p;
/// a phase of pi/2 therefore turns the readout into an x measurement.
struct MeasurementPlan {
  /// (input mode, attached cluster mode) of the 50:50 beamsplitter.
  std::pair<Eigen::Index, Eigen::Index> bs_pair{0, 1};

  /// Unit-modulus phase per mode, applied after the beamsplitter.
  Eigen::VectorXcd d_meas;

  /// Modes whose p quadrature is read out, in outcome order. Together with
  /// `output` this must cover every mode exactly once.
  std::vector<Eigen::Index> measured;

  /// The single unmeasured mode carrying the result.
  Eigen::Index output = 0;

  /// The single-mode Fourier gate on a three-mode chain: beamsplitter on
  /// (0, 1), phases diag(i, i, 1, 1), p readout on modes 0, 1, 2, result on
  /// mode 3.
  static MeasurementPlan fourier() {
    return from_phases({0, 1},
                       {std::numbers::pi / 2, std::numbers::pi / 2, 0.0, 0.0},
                       {0, 1, 2}, 3);
  }

  static MeasurementPlan from_phases(std::pair<Eigen::Index, Eigen::Index> bs,
                                     const std::vector<double>& phases,
                                     std::vector<Eigen::Index> measured_modes,
                                     Eigen::Index output_mode) {
    MeasurementPlan plan;
    plan.bs_pair = bs;
    plan.d_meas.resize(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t i = 0; i < phases.size(); ++i) {
      if (!std::isfinite(phases[i])) {
        throw ValidationError("MeasurementPlan: non-finite phase");
      }
      plan.d_meas[static_cast<Eigen::Index>(i)] =
          std::polar(1.0, phases[i]);
    }
    plan.measured = std::move(measured_modes);
    plan.output = output_mode;
    return plan;
  }

  void validate(Eigen::Index n_total) const {
    if (d_meas.size() != n_total) {
      throw DimensionError("MeasurementPlan: d_meas length " +
                           std::to_string(d_meas.size()) + " != mode count " +
                           std::to_string(n_total));
    }
    for (Eigen::Index i = 0; i < n_total; ++i) {
      if (std::abs(std::abs(d_meas[i]) - 1.0) > 1e-10) {
        throw ValidationError("MeasurementPlan: d_meas entries must have unit modulus");
      }
    }
    const auto in_range = [n_total](Eigen::Index m) {
      return m >= 0 && m < n_total;
    };
    if (!in_range(bs_pair.first) || !in_range(bs_pair.second) ||
        bs_pair.first == bs_pair.second) {
      throw DimensionError("MeasurementPlan: invalid beamsplitter pair");
    }
    if (static_cast<Eigen::Index>(measured.size()) != n_total - 1) {
      throw ValidationError("MeasurementPlan: measured modes plus the output must cover all modes");
    }
    if (!in_range(output)) {
      throw DimensionError("MeasurementPlan: output mode out of range");
    }
    std::vector<bool> covered(static_cast<std::size_t>(n_total), false);
    covered[static_cast<std::size_t>(output)] = true;
    for (Eigen::Index m : measured) {
      if (!in_range(m)) {
        throw DimensionError("MeasurementPlan: measured mode out of range");
      }
      if (covered[static_cast<std::size_t>(m)]) {
        throw ValidationError("MeasurementPlan: mode " + std::to_string(m) +
                              " listed twice");
      }
      covered[static_cast<std::size_t>(m)] = true;
    }
  }
};

/// 50:50 beamsplitter on modes (i, j) with the i off-diagonal phase,
/// identity elsewhere.
inline ComplexMatrix beamsplitter_unitary(Eigen::Index n_total, Eigen::Index i,
                                          Eigen::Index j) {
  if (n_total < 2) {
    throw DimensionError("beamsplitter_unitary: need at least two modes");
  }
  if (i < 0 || j < 0 || i >= n_total || j >= n_total) {
    throw DimensionError("beamsplitter_unitary: index out of range");
  }
  if (i == j) {
    throw DimensionError("beamsplitter_unitary: modes must differ");
  }
  ComplexMatrix u = ComplexMatrix::Identity(n_total, n_total);
  const double r = 1.0 / std::numbers::sqrt2;
  u(i, i) = r;
  u(j, j) = r;
  u(i, j) = std::complex<double>(0.0, r);
  u(j, i) = std::complex<double>(0.0, r);
  return u;
}

/// The full computation network U = D_meas U_BS (I_1 (+) U_V): the cluster
/// synthesis extended by an identity on the input mode, the attaching
/// beamsplitter, then the measurement-basis rotations.
inline ComplexMatrix compose_computation(const NetworkUnitary& u_v,
                                         const MeasurementPlan& plan) {
  const Eigen::Index n = u_v.mode_count();
  const Eigen::Index n_total = n + 1;
  plan.validate(n_total);
  ComplexMatrix extended = ComplexMatrix::Identity(n_total, n_total);
  extended.bottomRightCorner(n, n) = u_v.unitary();
  return plan.d_meas.asDiagonal() *
         (beamsplitter_unitary(n_total, plan.bs_pair.first,
                               plan.bs_pair.second) *
          extended);
}

inline ComplexMatrix compose_computation(const AdjacencyGraph& g,
                                         const AngleVector& theta,
                                         const MeasurementPlan& plan) {
  return compose_computation(cluster_unitary(g, theta), plan);
}

/// What remains of the output mode once the measured modes are classical:
/// the 2x2 symplectic gate on (x_in, p_in), residual couplings to the
/// squeezed cluster quadratures p_j^squ (cluster-mode order), and the
/// feed-forward coefficients on the measurement outcomes (plan.measured
/// order).
struct MBQCOutcome {
  Eigen::Matrix2d gate = Eigen::Matrix2d::Zero();
  RealVector noise_x;
  RealVector noise_p;
  RealVector displacement_x;
  RealVector displacement_p;
  std::vector<Eigen::Index> measured;
  double elimination_residual = 0.0;
};

/// Performs the homodyne elimination on the quadrature form of U_comp.
///
/// The measured p' rows are linear forms in {x_in, p_in, x_j^squ, p_j^squ}.
/// Treating the measured values as classical numbers, the n equations are
/// solved for the n anti-squeezed variables x_j^squ and substituted into the
/// output rows (x'_out, p'_out). The anti-squeezed coefficients of the output
/// must cancel exactly; `elimination_residual` reports what is left.
///
/// Throws InvalidPlanError when the anti-squeezed coefficient block of the
/// measured rows is singular (the plan extracts no usable information).
inline MBQCOutcome eliminate_and_project(const ComplexMatrix& u_comp,
                                         const MeasurementPlan& plan,
                                         double unitarity_tol = tol::kUnitarity) {
  const Eigen::Index m_total = u_comp.rows();
  plan.validate(m_total);
  const Eigen::Index n = m_total - 1;  // cluster modes
  const RealMatrix s = quadrature_symplectic(u_comp, unitarity_tol);

  // Column layout of s: (x_0, x_1..x_n | p_0, p_1..p_n) with mode 0 the input.
  RealMatrix anti(n, n);  // measured-row coefficients on x_j^squ
  RealMatrix squ(n, n);   // measured-row coefficients on p_j^squ
  RealVector in_x(n);
  RealVector in_p(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto row = s.row(m_total + plan.measured[static_cast<std::size_t>(r)]);
    in_x(r) = row(0);
    in_p(r) = row(m_total);
    anti.row(r) = row.segment(1, n);
    squ.row(r) = row.segment(m_total + 1, n);
  }

  // Rows of the quadrature transform of a unitary have entries bounded by 1,
  // so an absolute singular-value floor is the right solvability test here;
  // pivot thresholds relative to the largest pivot would accept an all-tiny
  // block.
  const Eigen::JacobiSVD<RealMatrix> svd(anti);
  if (svd.singularValues().minCoeff() < 1e-10) {
    throw InvalidPlanError(
        "eliminate_and_project: invalid measurement plan (anti-squeezed "
        "coefficients of the measured rows are singular)");
  }
  const RealMatrix anti_inv = Eigen::FullPivLU<RealMatrix>(anti).inverse();

  MBQCOutcome out;
  out.measured = plan.measured;
  double residual = 0.0;
  const auto project = [&](Eigen::Index s_row, RealVector& noise,
                           RealVector& displacement) {
    const auto row = s.row(s_row);
    const Eigen::RowVectorXd gamma = row.segment(1, n);
    const Eigen::RowVectorXd eta = row.segment(m_total + 1, n);
    const Eigen::RowVectorXd w = gamma * anti_inv;
    noise = (eta - w * squ).transpose();
    displacement = w.transpose();
    residual = std::max(residual, (gamma - w * anti).cwiseAbs().maxCoeff());
    return std::pair<double, double>{row(0) - w.dot(in_x),
                                     row(m_total) - w.dot(in_p)};
  };
  const auto [gate_xx, gate_xp] =
      project(plan.output, out.noise_x, out.displacement_x);
  const auto [gate_px, gate_pp] =
      project(m_total + plan.output, out.noise_p, out.displacement_p);
  out.gate << gate_xx, gate_xp, gate_px, gate_pp;
  out.elimination_residual = residual;
  if (residual > 1e-8) {
    throw InvalidPlanError(
        "eliminate_and_project: anti-squeezed cancellation left residual " +
        std::to_string(residual));
  }
  return out;
}

/// Added output-mode variances from finite squeezing, in units of shot
/// noise: var = sum_j coeff_j^2 k_j per quadrature, f2 their sum.
struct ExcessNoise {
  double var_x = 0.0;
  double var_p = 0.0;
  double f2 = 0.0;
};

inline ExcessNoise extra_noise_variances(const MBQCOutcome& outcome,
                                         const SqueezingProfile& profile) {
  if (profile.size() != outcome.noise_x.size()) {
    throw DimensionError("extra_noise_variances: profile length " +
                         std::to_string(profile.size()) +
                         " != cluster mode count " +
                         std::to_string(outcome.noise_x.size()));
  }
  ExcessNoise noise;
  noise.var_x = outcome.noise_x.array().square().matrix().dot(profile.k());
  noise.var_p = outcome.noise_p.array().square().matrix().dot(profile.k());
  noise.f2 = noise.var_x + noise.var_p;
  return noise;
}

/// The outcome's noise vectors re-expressed over the cluster nullifiers:
/// noise = coeffs^T (X + V Y).
struct NullifierDecomposition {
  RealVector coeffs_x;
  RealVector coeffs_p;
  double residual = 0.0;
};

inline NullifierDecomposition nullifier_decomposition(
    const MBQCOutcome& outcome, const NetworkUnitary& u_v) {
  const Eigen::Index n = u_v.mode_count();
  if (outcome.noise_x.size() != n || outcome.noise_p.size() != n) {
    throw DimensionError("nullifier_decomposition: outcome does not match cluster size");
  }
  const RealMatrix basis = cluster_noise_matrix(u_v);
  Eigen::FullPivLU<RealMatrix> lu(basis.transpose());
  if (!lu.isInvertible()) {
    throw SingularMatrixError("nullifier_decomposition: nullifier basis is singular");
  }
  NullifierDecomposition decomposition;
  decomposition.coeffs_x = lu.solve(outcome.noise_x);
  decomposition.coeffs_p = lu.solve(outcome.noise_p);
  const double res_x = (basis.transpose() * decomposition.coeffs_x - outcome.noise_x)
                           .cwiseAbs()
                           .maxCoeff();
  const double res_p = (basis.transpose() * decomposition.coeffs_p - outcome.noise_p)
                           .cwiseAbs()
                           .maxCoeff();
  decomposition.residual = std::max(res_x, res_p);
  return decomposition;
}

inline NullifierDecomposition nullifier_decomposition(
    const MBQCOutcome& outcome, const AdjacencyGraph& g,
    const AngleVector& theta) {
  return nullifier_decomposition(outcome, cluster_unitary(g, theta));
}

/// Excess-noise figure of merit for the composed computation at theta.
inline double fitness_f2(const AdjacencyGraph& g, const AngleVector& theta,
                         const MeasurementPlan& plan,
                         const SqueezingProfile& profile) {
  const MBQCOutcome outcome =
      eliminate_and_project(compose_computation(g, theta, plan), plan);
  return extra_noise_variances(outcome, profile).f2;
}

/// Objective factory for optimizer loops: freezes the synthesis base
/// (I + iV)(V^2+I)^{-1/2} and the fixed left factor D_meas U_BS; each
/// evaluation costs one Givens chart walk, two small complex products and
/// the elimination solve.
inline std::function<double(const AngleVector&)> make_f2_objective(
    const AdjacencyGraph& g, const MeasurementPlan& plan,
    const SqueezingProfile& profile) {
  const Eigen::Index n = g.size();
  if (profile.size() != n) {
    throw DimensionError("make_f2_objective: profile length != mode count");
  }
  plan.validate(n + 1);
  const RealMatrix& v = g.matrix();
  const RealMatrix base_x = inv_sqrt_spd(v * v + RealMatrix::Identity(n, n));
  ComplexMatrix base(n, n);
  base.real() = base_x;
  base.imag() = v * base_x;
  ComplexMatrix left =
      plan.d_meas.asDiagonal() *
      beamsplitter_unitary(n + 1, plan.bs_pair.first, plan.bs_pair.second);
  return [n, plan, base = std::move(base), left = std::move(left),
          k = profile.k()](const AngleVector& theta) {
    ComplexMatrix extended = ComplexMatrix::Identity(n + 1, n + 1);
    extended.bottomRightCorner(n, n) =
        base * givens_orthogonal(theta, n).cast<std::complex<double>>();
    const MBQCOutcome outcome =
        eliminate_and_project(ComplexMatrix(left * extended), plan);
    return outcome.noise_x.array().square().matrix().dot(k) +
           outcome.noise_p.array().square().matrix().dot(k);
  };
}

}  // namespace clusteropt
