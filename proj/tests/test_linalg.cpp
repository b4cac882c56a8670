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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "clusteropt/graph.hpp"
#include "clusteropt/linalg.hpp"
#include "clusteropt/network.hpp"

using namespace clusteropt;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const RealMatrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("wrap_angle reduces to [-pi, pi)") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == Catch::Approx(-kPi));
  CHECK(wrap_angle(-kPi) == Catch::Approx(-kPi));
  CHECK(wrap_angle(3.0 * kPi) == Catch::Approx(-kPi));
  CHECK(wrap_angle(2.0 * kPi + 0.25) == Catch::Approx(0.25));
  CHECK(wrap_angle(-2.0 * kPi - 0.25) == Catch::Approx(-0.25));
}

TEST_CASE("AngleVector canonicalizes and rejects non-finite entries") {
  const AngleVector theta(std::vector<double>{kPi, -3.0 * kPi, 0.5});
  CHECK(theta[0] == Catch::Approx(-kPi));
  CHECK(theta[1] == Catch::Approx(-kPi));
  CHECK(theta[2] == 0.5);
  CHECK(AngleVector::zero(0).size() == 0);
  CHECK_THROWS_AS(
      AngleVector(std::vector<double>{std::numeric_limits<double>::quiet_NaN()}),
      ValidationError);
}

TEST_CASE("inv_sqrt_spd identity and scalar cases") {
  for (Eigen::Index n : {1, 2, 5}) {
    const RealMatrix r = inv_sqrt_spd(RealMatrix::Identity(n, n));
    CHECK(max_abs(r - RealMatrix::Identity(n, n)) < 1e-13);
  }
  // Two-node graph: V^2 + I = 2I, so the root is I / sqrt(2).
  const RealMatrix r = inv_sqrt_spd(2.0 * RealMatrix::Identity(2, 2));
  CHECK(r(0, 0) == Catch::Approx(1.0 / std::numbers::sqrt2).margin(1e-14));
  CHECK(r(0, 1) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("inv_sqrt_spd multiply-back on the three-chain") {
  const AdjacencyGraph g = AdjacencyGraph::linear_cluster(3);
  const RealMatrix m =
      g.matrix() * g.matrix() + RealMatrix::Identity(3, 3);
  const RealMatrix root = inv_sqrt_spd(m);
  CHECK(max_abs(root * m * root - RealMatrix::Identity(3, 3)) < 1e-10);
  CHECK(symmetry_residual(root) < 1e-12);
}

TEST_CASE("inv_sqrt_spd error paths") {
  RealMatrix asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(inv_sqrt_spd(asym), ValidationError);
  CHECK_THROWS_AS(inv_sqrt_spd(RealMatrix::Zero(3, 3)), SingularMatrixError);
  RealMatrix indefinite = RealMatrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(inv_sqrt_spd(indefinite), SingularMatrixError);
  CHECK_THROWS_AS(inv_sqrt_spd(RealMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("inv_sqrt_spd property: random SPD multiply-back") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 11);
    RealMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = entry(rng);
    }
    const RealMatrix m =
        a * a.transpose() + 1e-3 * RealMatrix::Identity(n, n);
    const RealMatrix root = inv_sqrt_spd(m);
    CHECK(max_abs(root * m * root - RealMatrix::Identity(n, n)) < 1e-9);
  }
}

TEST_CASE("givens_orthogonal identity and quarter rotation") {
  CHECK(max_abs(givens_orthogonal(AngleVector::zero(6), 4) -
                RealMatrix::Identity(4, 4)) == 0.0);
  const RealMatrix o =
      givens_orthogonal(AngleVector(std::vector<double>{kPi / 2}), 2);
  RealMatrix expected(2, 2);
  expected << 0.0, -1.0, 1.0, 0.0;
  CHECK(max_abs(o - expected) < 1e-15);
}

TEST_CASE("givens_orthogonal property: orthogonal with unit determinant") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    RealVector v(angle_count(5));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = angle(rng);
    const RealMatrix o = givens_orthogonal(AngleVector(v), 5);
    CHECK(max_abs(o * o.transpose() - RealMatrix::Identity(5, 5)) < 1e-12);
    CHECK(o.determinant() == Catch::Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("givens_orthogonal rejects wrong angle counts") {
  CHECK_THROWS_AS(givens_orthogonal(AngleVector::zero(5), 4), DimensionError);
  CHECK_THROWS_AS(givens_orthogonal(AngleVector::zero(0), 0), DimensionError);
}

TEST_CASE("quadrature_symplectic basic shapes") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  CHECK(max_abs(quadrature_symplectic(id) - RealMatrix::Identity(6, 6)) == 0.0);

  ComplexMatrix phase(1, 1);
  phase(0, 0) = std::complex<double>(0.0, 1.0);
  RealMatrix expected(2, 2);
  expected << 0.0, -1.0, 1.0, 0.0;
  CHECK(max_abs(quadrature_symplectic(phase) - expected) == 0.0);

  ComplexMatrix not_unitary = ComplexMatrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(quadrature_symplectic(not_unitary), ValidationError);
}

TEST_CASE("quadrature_symplectic is a homomorphism") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const AdjacencyGraph g = AdjacencyGraph::linear_cluster(4);
  for (int trial = 0; trial < 10; ++trial) {
    RealVector v1(angle_count(4)), v2(angle_count(4));
    for (Eigen::Index i = 0; i < v1.size(); ++i) {
      v1[i] = angle(rng);
      v2[i] = angle(rng);
    }
    const ComplexMatrix u1 = cluster_unitary(g, AngleVector(v1)).unitary();
    const ComplexMatrix u2 = cluster_unitary(g, AngleVector(v2)).unitary();
    const RealMatrix lhs = quadrature_symplectic(ComplexMatrix(u1 * u2));
    const RealMatrix rhs =
        quadrature_symplectic(u1) * quadrature_symplectic(u2);
    CHECK(max_abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("check_symplectic") {
  CHECK(check_symplectic(RealMatrix::Identity(4, 4)) == 0.0);

  // Single-mode shear: symplectic (unit determinant) but not passive.
  RealMatrix shear(2, 2);
  shear << 1.0, 1.0, 0.0, 1.0;
  CHECK(check_symplectic(shear) < 1e-15);

  RealMatrix stretch(2, 2);
  stretch << 1.0, 1.0, 0.0, 2.0;  // determinant 2: not symplectic
  CHECK(check_symplectic(stretch) > 0.5);

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const AdjacencyGraph g = AdjacencyGraph::linear_cluster(5);
  RealVector v(angle_count(5));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = angle(rng);
  const ComplexMatrix u = cluster_unitary(g, AngleVector(v)).unitary();
  CHECK(check_symplectic(quadrature_symplectic(u)) < 1e-10);

  CHECK_THROWS_AS(check_symplectic(RealMatrix::Identity(3, 3)), DimensionError);
  CHECK_THROWS_AS(check_symplectic(RealMatrix::Zero(2, 4)), DimensionError);
}
