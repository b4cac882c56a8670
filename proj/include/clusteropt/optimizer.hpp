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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "clusteropt/errors.hpp"
#include "clusteropt/linalg.hpp"

namespace clusteropt {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic draws from mt19937_64: Box-Muller normals (two uniforms per
/// sample, nothing cached) and [0,1) uniforms. Streams are identical for a
/// given seed across platforms and standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

  double normal() {
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * kInv53;  // (0, 1]
    const double u2 = static_cast<double>(gen_() >> 11) * kInv53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double uniform() { return static_cast<double>(gen_() >> 11) * kInv53; }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  std::mt19937_64 gen_;
};

inline void append_double(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out += buf;
}

}  // namespace detail

struct OptimizerConfig {
  int population = 16;  // offspring per generation (lambda)
  int parents = 4;      // selected survivors (mu)
  double sigma0 = 0.3;  // initial global step, radians
  int max_generations = 500;
  std::optional<double> target_fitness;
  std::uint64_t seed = 1;
  double sigma_stop = 1e-8;  // stop once the adapted step collapses

  void validate() const {
    if (population < 1) {
      throw ValidationError("OptimizerConfig: population must be positive");
    }
    if (parents < 1 || parents > population) {
      throw ValidationError("OptimizerConfig: need 1 <= parents <= population");
    }
    if (!(sigma0 > 0.0)) {
      throw ValidationError("OptimizerConfig: sigma0 must be positive");
    }
    if (max_generations < 1) {
      throw ValidationError("OptimizerConfig: max_generations must be positive");
    }
  }
};

struct GenerationRecord {
  int generation = 0;
  double best_fitness = 0.0;  // best-so-far, monotone under elitism
  double mean_fitness = 0.0;  // mean over the generation's offspring
  double sigma = 0.0;         // adapted global step after selection
  std::vector<double> extras; // observer columns for the generation's best
};

struct OptimizationTrace {
  std::vector<std::string> extra_labels;
  std::vector<GenerationRecord> records;

  /// Fixed header generation,best_fitness,mean_fitness,sigma followed by one
  /// column per observer label; doubles at full round-trip precision.
  std::string to_csv() const {
    std::string out = "generation,best_fitness,mean_fitness,sigma";
    for (const std::string& label : extra_labels) {
      out += ',';
      out += label;
    }
    out += '\n';
    for (const GenerationRecord& rec : records) {
      out += std::to_string(rec.generation);
      out += ',';
      detail::append_double(out, rec.best_fitness);
      out += ',';
      detail::append_double(out, rec.mean_fitness);
      out += ',';
      detail::append_double(out, rec.sigma);
      for (double value : rec.extras) {
        out += ',';
        detail::append_double(out, value);
      }
      out += '\n';
    }
    return out;
  }

  void write_csv(std::ostream& os) const { os << to_csv(); }
};

struct OptimizationResult {
  AngleVector best_theta;
  double best_fitness = 0.0;
  OptimizationTrace trace;
};

using Objective = std::function<double(const AngleVector&)>;

/// Optional per-generation probe evaluated on the generation's best
/// candidate; results land as extra CSV columns (the per-nullifier
/// normalized variances, for cluster optimization runs).
struct TraceObserver {
  std::vector<std::string> labels;
  std::function<std::vector<double>(const AngleVector&)> eval;
  explicit operator bool() const { return static_cast<bool>(eval); }
};

/// (mu, lambda) evolution strategy over the angle torus.
///
/// Gaussian mutation with log-normal self-adaptation of a single global step
/// size (tau = 1/sqrt(2 dim)); offspring k mutates parent k mod mu; comma
/// selection rebuilds the parent set each generation while the best-so-far
/// is tracked elitistically and returned. Angles stay wrapped to [-pi, pi).
///
/// All random draws come from one seeded stream in a fixed order before any
/// evaluation, and per-generation reductions depend only on candidate order,
/// so a fixed seed gives bit-identical results no matter how evaluations are
/// scheduled. The search starts at `initial` (default: theta = 0), whose
/// fitness is evaluated first; the result is never worse than it.
inline OptimizationResult optimize(const Objective& objective,
                                   Eigen::Index dim,
                                   const OptimizerConfig& config,
                                   const TraceObserver& observer = {},
                                   const std::optional<AngleVector>& initial = {}) {
  config.validate();
  if (dim < 0) throw DimensionError("optimize: negative dimension");
  const AngleVector start = initial ? *initial : AngleVector::zero(dim);
  if (start.size() != dim) {
    throw DimensionError("optimize: initial point has wrong dimension");
  }

  OptimizationResult result;
  result.best_theta = start;
  result.best_fitness = objective(start);
  if (observer) result.trace.extra_labels = observer.labels;

  if (dim == 0) {
    GenerationRecord rec;
    rec.generation = 0;
    rec.best_fitness = result.best_fitness;
    rec.mean_fitness = result.best_fitness;
    rec.sigma = 0.0;
    if (observer) rec.extras = observer.eval(start);
    result.trace.records.push_back(std::move(rec));
    return result;
  }

  detail::RandomSource rng(config.seed);
  const double tau = 1.0 / std::sqrt(2.0 * static_cast<double>(dim));
  const int lambda = config.population;
  const int mu = config.parents;
  std::vector<RealVector> parents(static_cast<std::size_t>(mu),
                                  start.values());
  double sigma = config.sigma0;

  std::vector<RealVector> candidates(static_cast<std::size_t>(lambda));
  std::vector<double> candidate_sigma(static_cast<std::size_t>(lambda));
  std::vector<double> fitness(static_cast<std::size_t>(lambda));
  std::vector<int> order(static_cast<std::size_t>(lambda));

  for (int gen = 1; gen <= config.max_generations; ++gen) {
    for (int c = 0; c < lambda; ++c) {
      const RealVector& parent = parents[static_cast<std::size_t>(c % mu)];
      const double step = sigma * std::exp(tau * rng.normal());
      RealVector theta(dim);
      for (Eigen::Index d = 0; d < dim; ++d) {
        theta[d] = wrap_angle(parent[d] + step * rng.normal());
      }
      candidates[static_cast<std::size_t>(c)] = std::move(theta);
      candidate_sigma[static_cast<std::size_t>(c)] = step;
    }
    // Evaluations are independent; results are reduced in candidate order.
    double mean = 0.0;
    for (int c = 0; c < lambda; ++c) {
      fitness[static_cast<std::size_t>(c)] =
          objective(AngleVector(candidates[static_cast<std::size_t>(c)]));
      mean += fitness[static_cast<std::size_t>(c)];
    }
    mean /= lambda;

    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&fitness](int a, int b) {
      const double fa = fitness[static_cast<std::size_t>(a)];
      const double fb = fitness[static_cast<std::size_t>(b)];
      if (fa != fb) return fa < fb;
      return a < b;  // index tie-break keeps the ordering total
    });
    for (int p = 0; p < mu; ++p) {
      parents[static_cast<std::size_t>(p)] =
          candidates[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])];
    }
    double log_sigma = 0.0;
    for (int p = 0; p < mu; ++p) {
      log_sigma += std::log(
          candidate_sigma[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])]);
    }
    sigma = std::exp(log_sigma / mu);

    const int gen_best = order[0];
    if (fitness[static_cast<std::size_t>(gen_best)] < result.best_fitness) {
      result.best_fitness = fitness[static_cast<std::size_t>(gen_best)];
      result.best_theta =
          AngleVector(candidates[static_cast<std::size_t>(gen_best)]);
    }

    GenerationRecord rec;
    rec.generation = gen;
    rec.best_fitness = result.best_fitness;
    rec.mean_fitness = mean;
    rec.sigma = sigma;
    if (observer) {
      rec.extras = observer.eval(
          AngleVector(candidates[static_cast<std::size_t>(gen_best)]));
    }
    result.trace.records.push_back(std::move(rec));

    if (config.target_fitness &&
        result.best_fitness <= *config.target_fitness) {
      break;
    }
    if (sigma < config.sigma_stop) break;
  }
  return result;
}

struct MultiStartResult {
  OptimizationResult best;
  int best_start = 0;
  std::vector<std::pair<std::uint64_t, double>> start_fitness;  // (seed, best)
};

/// Best-of-`starts` restarts for the periodic, multimodal angle landscape.
/// Start 0 begins at theta = 0; later starts begin at uniform random points.
/// Per-start seeds derive deterministically from config.seed, so the whole
/// sweep is reproducible.
inline MultiStartResult multi_start_optimize(const Objective& objective,
                                             Eigen::Index dim,
                                             const OptimizerConfig& config,
                                             int starts = 8,
                                             const TraceObserver& observer = {}) {
  if (starts < 1) {
    throw ValidationError("multi_start_optimize: starts must be positive");
  }
  MultiStartResult multi;
  for (int s = 0; s < starts; ++s) {
    OptimizerConfig cfg = config;
    cfg.seed = detail::splitmix64(config.seed + static_cast<std::uint64_t>(s));
    std::optional<AngleVector> initial;
    if (s > 0 && dim > 0) {
      detail::RandomSource init_rng(detail::splitmix64(cfg.seed ^ 0x5deece66dull));
      RealVector theta(dim);
      for (Eigen::Index d = 0; d < dim; ++d) {
        theta[d] = -std::numbers::pi + 2.0 * std::numbers::pi * init_rng.uniform();
      }
      initial = AngleVector(std::move(theta));
    }
    OptimizationResult run = optimize(objective, dim, cfg, observer, initial);
    multi.start_fitness.emplace_back(cfg.seed, run.best_fitness);
    if (s == 0 || run.best_fitness < multi.best.best_fitness) {
      multi.best = std::move(run);
      multi.best_start = s;
    }
  }
  return multi;
}

/// Dense grid scan over [-pi, pi)^dim at the given angular resolution.
/// Validation oracle for the ES on tiny instances; refuses dim > 3.
inline std::pair<AngleVector, double> exhaustive_baseline(
    const Objective& objective, Eigen::Index dim, double resolution) {
  if (dim < 0) throw DimensionError("exhaustive_baseline: negative dimension");
  if (dim > 3) {
    throw ValidationError("exhaustive_baseline: refusing grids beyond dimension 3");
  }
  if (!(resolution > 0.0)) {
    throw ValidationError("exhaustive_baseline: resolution must be positive");
  }
  if (dim == 0) {
    AngleVector empty;
    return {empty, objective(empty)};
  }
  const auto steps = static_cast<Eigen::Index>(
      std::floor(2.0 * std::numbers::pi / resolution));
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(dim), 0);
  RealVector point(dim);
  AngleVector best_theta;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (Eigen::Index d = 0; d < dim; ++d) {
      point[d] = -std::numbers::pi +
                 static_cast<double>(idx[static_cast<std::size_t>(d)]) * resolution;
    }
    AngleVector theta(point);
    const double value = objective(theta);
    if (value < best) {
      best = value;
      best_theta = theta;
    }
    Eigen::Index d = 0;
    while (d < dim) {
      if (++idx[static_cast<std::size_t>(d)] < steps) break;
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == dim) break;
  }
  return {best_theta, best};
}

}  // namespace clusteropt
