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
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clusteropt/linalg.hpp"

namespace clusteropt {

struct Edge {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double weight = 1.0;
};

/// Weighted undirected graph held as its adjacency matrix: exactly
/// symmetric, zero diagonal, finite weights. Immutable after construction.
class AdjacencyGraph {
 public:
  /// Open chain 0-1-...-(n-1) with unit weights. n = 1 gives the edgeless
  /// single node.
  static AdjacencyGraph linear_cluster(Eigen::Index n) {
    RealMatrix v = zero_matrix(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      v(i, i + 1) = 1.0;
      v(i + 1, i) = 1.0;
    }
    return AdjacencyGraph(std::move(v));
  }

  static AdjacencyGraph from_edges(Eigen::Index n,
                                   const std::vector<Edge>& edges) {
    RealMatrix v = zero_matrix(n);
    std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
    for (const Edge& e : edges) {
      if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
        throw DimensionError("from_edges: edge index out of range: (" +
                             std::to_string(e.i) + ", " + std::to_string(e.j) +
                             ") with n = " + std::to_string(n));
      }
      if (e.i == e.j) {
        throw ValidationError("from_edges: self-loop on node " +
                              std::to_string(e.i));
      }
      if (!std::isfinite(e.weight)) {
        throw ValidationError("from_edges: non-finite weight");
      }
      const std::pair<Eigen::Index, Eigen::Index> key{std::min(e.i, e.j),
                                                      std::max(e.i, e.j)};
      if (!seen.insert(key).second) {
        throw ValidationError("from_edges: duplicate edge (" +
                              std::to_string(key.first) + ", " +
                              std::to_string(key.second) + ")");
      }
      v(e.i, e.j) = e.weight;
      v(e.j, e.i) = e.weight;
    }
    return AdjacencyGraph(std::move(v));
  }

  /// Cycle on n >= 3 nodes; convenience for scaling tests.
  static AdjacencyGraph ring(Eigen::Index n) {
    if (n < 3) throw DimensionError("ring: need at least three nodes");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
    return from_edges(n, edges);
  }

  /// rows x cols square lattice, row-major node numbering; convenience for
  /// scaling tests.
  static AdjacencyGraph grid(Eigen::Index rows, Eigen::Index cols) {
    if (rows < 1 || cols < 1) {
      throw DimensionError("grid: extents must be positive");
    }
    std::vector<Edge> edges;
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        const Eigen::Index node = r * cols + c;
        if (c + 1 < cols) edges.push_back({node, node + 1, 1.0});
        if (r + 1 < rows) edges.push_back({node, node + cols, 1.0});
      }
    }
    return from_edges(rows * cols, edges);
  }

  Eigen::Index size() const { return v_.rows(); }
  const RealMatrix& matrix() const { return v_; }

  double weight(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || i >= size() || j < 0 || j >= size()) {
      throw DimensionError("weight: index out of range");
    }
    return v_(i, j);
  }

  bool operator==(const AdjacencyGraph& other) const { return v_ == other.v_; }

  /// Stable FNV-1a digest over (n, upper-triangle nonzero weights); tags
  /// exported artifacts with their source graph.
  std::string hash_hex() const {
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&h](const char* data, int len) {
      for (int b = 0; b < len; ++b) {
        h ^= static_cast<unsigned char>(data[b]);
        h *= 1099511628211ull;
      }
    };
    char buf[80];
    mix(buf, std::snprintf(buf, sizeof buf, "n=%lld",
                           static_cast<long long>(size())));
    for (Eigen::Index i = 0; i < size(); ++i) {
      for (Eigen::Index j = i + 1; j < size(); ++j) {
        if (v_(i, j) == 0.0) continue;
        mix(buf, std::snprintf(buf, sizeof buf, "|%lld,%lld,%.17g",
                               static_cast<long long>(i),
                               static_cast<long long>(j), v_(i, j)));
      }
    }
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
  }

 private:
  explicit AdjacencyGraph(RealMatrix v) : v_(std::move(v)) {
    detail::ensure_finite(v_, "AdjacencyGraph");
  }

  static RealMatrix zero_matrix(Eigen::Index n) {
    if (n < 1) {
      throw DimensionError("AdjacencyGraph: mode count must be positive");
    }
    return RealMatrix::Zero(n, n);
  }

  RealMatrix v_;
};

}  // namespace clusteropt
