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

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusteropt/graph.hpp"
#include "clusteropt/linalg.hpp"
#include "clusteropt/mbqc.hpp"
#include "clusteropt/network.hpp"
#include "clusteropt/noise.hpp"
#include "clusteropt/optimizer.hpp"

namespace clusteropt {

using Json = nlohmann::json;

namespace detail {

inline const Json& require_field(const Json& j, const char* name,
                                 const char* context) {
  const auto it = j.find(name);
  if (it == j.end()) {
    throw ValidationError(std::string(context) + ": missing field '" + name +
                          "'");
  }
  return *it;
}

template <typename T>
T field_as(const Json& j, const char* name, const char* context) {
  try {
    return require_field(j, name, context).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string(context) + ": field '" + name +
                          "': " + e.what());
  }
}

template <typename T>
T field_or(const Json& j, const char* name, const char* context, T fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  return field_as<T>(j, name, context);
}

inline Json to_array(const RealVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

inline Json to_array(const std::vector<double>& v) {
  return Json(v);
}

}  // namespace detail

// --- graph -----------------------------------------------------------------

/// Schema: {"n": int, "edges": [[i, j, weight], ...]}; weight optional with
/// default 1.
inline AdjacencyGraph graph_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("graph: expected an object");
  const auto n = detail::field_as<Eigen::Index>(j, "n", "graph");
  const Json& arr = detail::require_field(j, "edges", "graph");
  if (!arr.is_array()) {
    throw ValidationError("graph: field 'edges' must be an array");
  }
  std::vector<Edge> edges;
  edges.reserve(arr.size());
  for (const Json& entry : arr) {
    if (!entry.is_array() || entry.size() < 2 || entry.size() > 3) {
      throw ValidationError(
          "graph: field 'edges': entries must be [i, j] or [i, j, weight]");
    }
    Edge edge;
    try {
      edge.i = entry[0].get<Eigen::Index>();
      edge.j = entry[1].get<Eigen::Index>();
      edge.weight = entry.size() == 3 ? entry[2].get<double>() : 1.0;
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("graph: field 'edges': ") + e.what());
    }
    edges.push_back(edge);
  }
  return AdjacencyGraph::from_edges(n, edges);
}

inline Json graph_to_json(const AdjacencyGraph& g) {
  Json edges = Json::array();
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    for (Eigen::Index j = i + 1; j < g.size(); ++j) {
      if (g.matrix()(i, j) != 0.0) {
        edges.push_back(Json::array({i, j, g.matrix()(i, j)}));
      }
    }
  }
  return Json{{"n", g.size()}, {"edges", edges}};
}

// --- complex matrices -------------------------------------------------------

/// Row-major flat list of [re, im] pairs.
inline Json complex_matrix_to_json(const ComplexMatrix& u) {
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      arr.push_back(Json::array({u(r, c).real(), u(r, c).imag()}));
    }
  }
  return arr;
}

inline ComplexMatrix complex_matrix_from_json(const Json& j, Eigen::Index rows,
                                              Eigen::Index cols,
                                              const char* context) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols) {
    throw ValidationError(std::string(context) +
                          ": expected a flat row-major list of " +
                          std::to_string(rows * cols) + " [re, im] pairs");
  }
  ComplexMatrix u(rows, cols);
  Eigen::Index flat = 0;
  for (const Json& entry : j) {
    if (!entry.is_array() || entry.size() != 2) {
      throw ValidationError(std::string(context) + ": entries must be [re, im]");
    }
    u(flat / cols, flat % cols) =
        std::complex<double>(entry[0].get<double>(), entry[1].get<double>());
    ++flat;
  }
  return u;
}

// --- network ----------------------------------------------------------------

inline Json unitary_to_json(const NetworkUnitary& u) {
  Json out{
      {"n", u.mode_count()},
      {"graph_hash", u.graph().hash_hex()},
      {"unitary", complex_matrix_to_json(u.unitary())},
      {"unitarity_residual", unitarity_residual(u.unitary())},
      {"cluster_residual", verify_cluster_condition(u, u.graph())},
  };
  if (u.theta()) {
    out["theta"] = detail::to_array(u.theta()->values());
  }
  return out;
}

// --- measurement plans -------------------------------------------------------

/// Accepts {"preset": "fourier"} or the explicit form
/// {"bs_pair": [a, b], "d_meas_phases": [...], "measured": [...], "output": m}.
inline MeasurementPlan plan_from_json(const Json& j, Eigen::Index cluster_modes) {
  if (j.is_object() && j.contains("preset")) {
    const auto preset = detail::field_as<std::string>(j, "preset", "plan");
    if (preset == "fourier") {
      if (cluster_modes != 3) {
        throw ValidationError(
            "plan: preset 'fourier' requires a three-mode cluster");
      }
      return MeasurementPlan::fourier();
    }
    throw ValidationError("plan: unknown preset '" + preset + "'");
  }
  if (!j.is_object()) throw ValidationError("plan: expected an object");
  const auto bs = detail::field_as<std::vector<Eigen::Index>>(j, "bs_pair", "plan");
  if (bs.size() != 2) {
    throw ValidationError("plan: field 'bs_pair' must hold two mode indices");
  }
  // Fields are pulled in declaration order so error messages are stable.
  const auto phases =
      detail::field_as<std::vector<double>>(j, "d_meas_phases", "plan");
  auto measured = detail::field_as<std::vector<Eigen::Index>>(j, "measured", "plan");
  const auto output = detail::field_as<Eigen::Index>(j, "output", "plan");
  MeasurementPlan plan = MeasurementPlan::from_phases(
      {bs[0], bs[1]}, phases, std::move(measured), output);
  plan.validate(cluster_modes + 1);
  return plan;
}

inline Json plan_to_json(const MeasurementPlan& plan) {
  std::vector<double> phases(static_cast<std::size_t>(plan.d_meas.size()));
  for (Eigen::Index i = 0; i < plan.d_meas.size(); ++i) {
    phases[static_cast<std::size_t>(i)] = std::arg(plan.d_meas[i]);
  }
  return Json{{"bs_pair", Json::array({plan.bs_pair.first, plan.bs_pair.second})},
              {"d_meas_phases", phases},
              {"measured", plan.measured},
              {"output", plan.output}};
}

// --- reports ------------------------------------------------------------------

inline Json nullifier_report_to_json(const NullifierReport& r) {
  return Json{{"variances", detail::to_array(r.variances)},
              {"shot", detail::to_array(r.shot)},
              {"normalized", detail::to_array(r.normalized)},
              {"f1", r.f1},
              {"f1_alt", r.f1_alt}};
}

inline Json outcome_to_json(const MBQCOutcome& o) {
  return Json{
      {"gate", Json::array({Json::array({o.gate(0, 0), o.gate(0, 1)}),
                            Json::array({o.gate(1, 0), o.gate(1, 1)})})},
      {"noise_x", detail::to_array(o.noise_x)},
      {"noise_p", detail::to_array(o.noise_p)},
      {"displacement_x", detail::to_array(o.displacement_x)},
      {"displacement_p", detail::to_array(o.displacement_p)},
      {"measured", o.measured},
      {"elimination_residual", o.elimination_residual},
  };
}

inline Json excess_to_json(const ExcessNoise& e) {
  return Json{{"var_x", e.var_x}, {"var_p", e.var_p}, {"f2", e.f2}};
}

inline Json decomposition_to_json(const NullifierDecomposition& d) {
  return Json{{"coeffs_x", detail::to_array(d.coeffs_x)},
              {"coeffs_p", detail::to_array(d.coeffs_p)},
              {"residual", d.residual}};
}

// --- optimizer config ----------------------------------------------------------

inline OptimizerConfig optimizer_config_from_json(const Json& j) {
  OptimizerConfig config;
  config.population = detail::field_or(j, "population", "optimizer", config.population);
  config.parents = detail::field_or(j, "parents", "optimizer", config.parents);
  config.sigma0 = detail::field_or(j, "sigma0", "optimizer", config.sigma0);
  config.max_generations =
      detail::field_or(j, "max_generations", "optimizer", config.max_generations);
  if (j.is_object() && j.contains("target_fitness")) {
    config.target_fitness =
        detail::field_as<double>(j, "target_fitness", "optimizer");
  }
  config.sigma_stop = detail::field_or(j, "sigma_stop", "optimizer", config.sigma_stop);
  config.validate();
  return config;
}

inline Json optimizer_config_to_json(const OptimizerConfig& c, int starts) {
  Json out{{"population", c.population},
           {"parents", c.parents},
           {"sigma0", c.sigma0},
           {"max_generations", c.max_generations},
           {"sigma_stop", c.sigma_stop},
           {"starts", starts}};
  if (c.target_fitness) out["target_fitness"] = *c.target_fitness;
  return out;
}

}  // namespace clusteropt
