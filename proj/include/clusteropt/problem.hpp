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
#include <string>
#include <utility>
#include <vector>

#include "clusteropt/mbqc.hpp"
#include "clusteropt/noise.hpp"
#include "clusteropt/optimizer.hpp"
#include "clusteropt/serialize.hpp"

namespace clusteropt {

/// Batch problem description, parsed from JSON. Tasks:
///   synthesize        -> unitary export for the given (or zero) theta
///   nullifiers        -> NullifierReport for the given (or zero) theta
///   optimize-cluster  -> minimize f1 over theta; report + trace
///   mbqc              -> composed computation outcome for the given theta
///   optimize-mbqc     -> minimize f2 over theta; report + trace
struct ProblemSpec {
  std::string task;
  AdjacencyGraph graph;
  std::optional<SqueezingProfile> squeezing;
  std::optional<MeasurementPlan> plan;
  std::optional<AngleVector> theta;
  OptimizerConfig optimizer;
  int starts = 8;
  bool seed_provided = false;

  static ProblemSpec parse(const Json& j) {
    if (!j.is_object()) throw ValidationError("spec: expected a JSON object");
    ProblemSpec spec(graph_from_json(detail::require_field(j, "graph", "spec")));
    spec.task = detail::field_as<std::string>(j, "task", "spec");
    const bool is_mbqc = spec.task == "mbqc" || spec.task == "optimize-mbqc";
    const bool is_cluster = spec.task == "nullifiers" ||
                            spec.task == "optimize-cluster" ||
                            spec.task == "synthesize";
    if (!is_mbqc && !is_cluster) {
      throw ValidationError("spec: field 'task': unknown task '" + spec.task +
                            "'");
    }

    if (j.contains("squeezing_db")) {
      auto db = detail::field_as<std::vector<double>>(j, "squeezing_db", "spec");
      if (static_cast<Eigen::Index>(db.size()) != spec.graph.size()) {
        throw ValidationError(
            "spec: field 'squeezing_db': expected one entry per cluster mode (" +
            std::to_string(spec.graph.size()) + ")");
      }
      spec.squeezing = SqueezingProfile(std::move(db));
    } else if (spec.task != "synthesize") {
      throw ValidationError("spec: missing field 'squeezing_db' (required for task '" +
                            spec.task + "')");
    }

    if (j.contains("plan")) {
      spec.plan = plan_from_json(j.at("plan"), spec.graph.size());
    } else if (is_mbqc) {
      throw ValidationError("spec: missing field 'plan' (required for task '" +
                            spec.task + "')");
    }

    if (j.contains("theta")) {
      auto angles = detail::field_as<std::vector<double>>(j, "theta", "spec");
      if (static_cast<Eigen::Index>(angles.size()) !=
          angle_count(spec.graph.size())) {
        throw ValidationError("spec: field 'theta': expected n(n-1)/2 = " +
                              std::to_string(angle_count(spec.graph.size())) +
                              " angles");
      }
      spec.theta = AngleVector(angles);
    }

    if (j.contains("optimizer")) {
      const Json& opt = j.at("optimizer");
      spec.optimizer = optimizer_config_from_json(opt);
      spec.starts = detail::field_or(opt, "starts", "optimizer", spec.starts);
      if (spec.starts < 1) {
        throw ValidationError("optimizer: field 'starts' must be positive");
      }
    }
    if (j.contains("seed")) {
      spec.optimizer.seed = detail::field_as<std::uint64_t>(j, "seed", "spec");
      spec.seed_provided = true;
    }
    return spec;
  }

 private:
  explicit ProblemSpec(AdjacencyGraph g) : graph(std::move(g)) {}
};

struct RunOutput {
  Json report;
  std::optional<std::string> trace_csv;
};

namespace detail {

inline Json resolved_config(const ProblemSpec& spec) {
  Json config{{"task", spec.task},
              {"graph", graph_to_json(spec.graph)},
              {"graph_hash", spec.graph.hash_hex()},
              {"seed", spec.optimizer.seed}};
  if (spec.squeezing) config["squeezing_db"] = spec.squeezing->db();
  if (spec.plan) config["plan"] = plan_to_json(*spec.plan);
  if (spec.theta) config["theta"] = to_array(spec.theta->values());
  if (spec.task == "optimize-cluster" || spec.task == "optimize-mbqc") {
    config["optimizer"] = optimizer_config_to_json(spec.optimizer, spec.starts);
  }
  return config;
}

inline Json starts_to_json(const MultiStartResult& multi) {
  Json starts = Json::array();
  for (const auto& [seed, best] : multi.start_fitness) {
    starts.push_back(Json{{"seed", seed}, {"best_fitness", best}});
  }
  return starts;
}

inline TraceObserver nullifier_observer(const AdjacencyGraph& g,
                                        const SqueezingProfile& profile) {
  TraceObserver observer;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    observer.labels.push_back("nullifier_" + std::to_string(i + 1));
  }
  observer.eval = [g, profile](const AngleVector& theta) {
    const NullifierReport report = nullifier_report(g, theta, profile);
    return std::vector<double>(report.normalized.begin(),
                               report.normalized.end());
  };
  return observer;
}

}  // namespace detail

/// Executes a parsed problem. Optimizer non-convergence is not an error:
/// the best candidate seen is reported either way.
inline RunOutput run(const ProblemSpec& spec) {
  RunOutput out;
  out.report["config"] = detail::resolved_config(spec);
  const AdjacencyGraph& g = spec.graph;
  const Eigen::Index dim = angle_count(g.size());
  const AngleVector theta = spec.theta ? *spec.theta : AngleVector::zero(dim);

  if (spec.task == "synthesize") {
    out.report["unitary"] = unitary_to_json(cluster_unitary(g, theta));
    return out;
  }

  if (spec.task == "nullifiers") {
    out.report["nullifiers"] =
        nullifier_report_to_json(nullifier_report(g, theta, *spec.squeezing));
    return out;
  }

  if (spec.task == "optimize-cluster") {
    const auto objective = make_f1_objective(g, *spec.squeezing);
    const MultiStartResult multi =
        multi_start_optimize(objective, dim, spec.optimizer, spec.starts,
                             detail::nullifier_observer(g, *spec.squeezing));
    out.report["best_theta"] = detail::to_array(multi.best.best_theta.values());
    out.report["best_f1"] = multi.best.best_fitness;
    out.report["best_start"] = multi.best_start;
    out.report["starts"] = detail::starts_to_json(multi);
    out.report["nullifiers"] = nullifier_report_to_json(
        nullifier_report(g, multi.best.best_theta, *spec.squeezing));
    out.trace_csv = multi.best.trace.to_csv();
    return out;
  }

  if (spec.task == "mbqc") {
    const NetworkUnitary u_v = cluster_unitary(g, theta);
    const MBQCOutcome outcome =
        eliminate_and_project(compose_computation(u_v, *spec.plan), *spec.plan);
    out.report["mbqc"] = outcome_to_json(outcome);
    out.report["excess"] =
        excess_to_json(extra_noise_variances(outcome, *spec.squeezing));
    out.report["nullifier_decomposition"] =
        decomposition_to_json(nullifier_decomposition(outcome, u_v));
    return out;
  }

  // optimize-mbqc
  const auto objective = make_f2_objective(g, *spec.plan, *spec.squeezing);
  const MultiStartResult multi =
      multi_start_optimize(objective, dim, spec.optimizer, spec.starts);
  const AngleVector& best = multi.best.best_theta;
  const NetworkUnitary u_v = cluster_unitary(g, best);
  const MBQCOutcome outcome =
      eliminate_and_project(compose_computation(u_v, *spec.plan), *spec.plan);
  out.report["best_theta"] = detail::to_array(best.values());
  out.report["best_f2"] = multi.best.best_fitness;
  out.report["best_start"] = multi.best_start;
  out.report["starts"] = detail::starts_to_json(multi);
  out.report["mbqc"] = outcome_to_json(outcome);
  out.report["excess"] =
      excess_to_json(extra_noise_variances(outcome, *spec.squeezing));
  out.trace_csv = multi.best.trace.to_csv();
  return out;
}

}  // namespace clusteropt
