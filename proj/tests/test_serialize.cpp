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

#include "test_support.hpp"

using namespace clusteropt;

TEST_CASE("graph JSON round trip") {
  const AdjacencyGraph g = AdjacencyGraph::from_edges(
      4, {{0, 1, 1.0}, {1, 2, -0.5}, {0, 3, 0.25}});
  const AdjacencyGraph back = graph_from_json(graph_to_json(g));
  CHECK(back == g);
}

TEST_CASE("graph JSON error messages name the field") {
  CHECK_THROWS_WITH(graph_from_json(Json{{"edges", Json::array()}}),
                    Catch::Matchers::ContainsSubstring("'n'"));
  CHECK_THROWS_WITH(graph_from_json(Json{{"n", 3}}),
                    Catch::Matchers::ContainsSubstring("'edges'"));
  CHECK_THROWS_AS(
      graph_from_json(Json{{"n", 3}, {"edges", Json::array({Json::array({0})})}}),
      ValidationError);
  // Default weight is 1.
  const AdjacencyGraph g = graph_from_json(
      Json{{"n", 2}, {"edges", Json::array({Json::array({0, 1})})}});
  CHECK(g.weight(0, 1) == 1.0);
}

TEST_CASE("complex matrix round trip") {
  const ComplexMatrix u =
      symmetric_unitary(AdjacencyGraph::linear_cluster(3)).unitary();
  const ComplexMatrix back =
      complex_matrix_from_json(complex_matrix_to_json(u), 3, 3, "test");
  CHECK((back - u).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(complex_matrix_from_json(complex_matrix_to_json(u), 2, 2, "test"),
                  ValidationError);
}

TEST_CASE("unitary export carries provenance") {
  const AdjacencyGraph g = AdjacencyGraph::linear_cluster(3);
  const NetworkUnitary u = cluster_unitary(g, AngleVector::zero(3));
  const Json j = unitary_to_json(u);
  CHECK(j.at("n").get<int>() == 3);
  CHECK(j.at("graph_hash").get<std::string>() == g.hash_hex());
  CHECK(j.at("theta").size() == 3);
  CHECK(j.at("unitary").size() == 9);
  CHECK(j.at("cluster_residual").get<double>() < 1e-10);
  const ComplexMatrix back =
      complex_matrix_from_json(j.at("unitary"), 3, 3, "unitary");
  CHECK((back - u.unitary()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("plan JSON: preset and explicit forms") {
  const MeasurementPlan preset =
      plan_from_json(Json{{"preset", "fourier"}}, 3);
  CHECK(preset.measured == std::vector<Eigen::Index>{0, 1, 2});
  CHECK_THROWS_AS(plan_from_json(Json{{"preset", "fourier"}}, 4),
                  ValidationError);
  CHECK_THROWS_AS(plan_from_json(Json{{"preset", "hadamard"}}, 3),
                  ValidationError);

  const Json explicit_form = plan_to_json(MeasurementPlan::fourier());
  const MeasurementPlan back = plan_from_json(explicit_form, 3);
  CHECK((back.d_meas - MeasurementPlan::fourier().d_meas).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK(back.output == 3);

  CHECK_THROWS_WITH(plan_from_json(Json{{"bs_pair", Json::array({0, 1})}}, 3),
                    Catch::Matchers::ContainsSubstring("'d_meas_phases'"));
}

TEST_CASE("problem spec parsing and validation") {
  Json spec_json{
      {"task", "nullifiers"},
      {"graph", Json{{"n", 3}, {"edges", Json::array({Json::array({0, 1, 1.0}),
                                                      Json::array({1, 2, 1.0})})}}},
      {"squeezing_db", Json::array({-7.0, -6.0, -4.0})},
  };
  const ProblemSpec spec = ProblemSpec::parse(spec_json);
  CHECK(spec.task == "nullifiers");
  CHECK(spec.graph.size() == 3);
  CHECK_FALSE(spec.seed_provided);

  Json bad_task = spec_json;
  bad_task["task"] = "frobnicate";
  CHECK_THROWS_WITH(ProblemSpec::parse(bad_task),
                    Catch::Matchers::ContainsSubstring("task"));

  Json bad_profile = spec_json;
  bad_profile["squeezing_db"] = Json::array({-7.0});
  CHECK_THROWS_WITH(ProblemSpec::parse(bad_profile),
                    Catch::Matchers::ContainsSubstring("squeezing_db"));

  Json bad_theta = spec_json;
  bad_theta["theta"] = Json::array({0.0});
  CHECK_THROWS_WITH(ProblemSpec::parse(bad_theta),
                    Catch::Matchers::ContainsSubstring("theta"));

  Json mbqc_missing_plan = spec_json;
  mbqc_missing_plan["task"] = "mbqc";
  CHECK_THROWS_WITH(ProblemSpec::parse(mbqc_missing_plan),
                    Catch::Matchers::ContainsSubstring("plan"));
}

TEST_CASE("run embeds the resolved config and reproduces itself") {
  Json spec_json{
      {"task", "nullifiers"},
      {"graph", Json{{"n", 4}, {"edges", Json::array({Json::array({0, 1, 1.0}),
                                                      Json::array({1, 2, 1.0}),
                                                      Json::array({2, 3, 1.0})})}}},
      {"squeezing_db", Json::array({-7.0, -6.0, -4.0, 0.0})},
      {"theta", Json::array({0.3, -0.2, 0.9, 0.0, 1.2, -2.0})},
      {"seed", 41},
  };
  const RunOutput out = run(ProblemSpec::parse(spec_json));
  CHECK(out.report.at("config").at("seed").get<std::uint64_t>() == 41);
  CHECK(out.report.at("config").at("task") == "nullifiers");

  // Round trip: feeding the embedded theta back reproduces the variances.
  Json again = spec_json;
  again["theta"] = out.report.at("config").at("theta");
  const RunOutput repeat = run(ProblemSpec::parse(again));
  const auto var_a =
      out.report.at("nullifiers").at("variances").get<std::vector<double>>();
  const auto var_b =
      repeat.report.at("nullifiers").at("variances").get<std::vector<double>>();
  REQUIRE(var_a.size() == var_b.size());
  for (std::size_t i = 0; i < var_a.size(); ++i) {
    CHECK(var_a[i] == Catch::Approx(var_b[i]).margin(1e-12));
  }
}

TEST_CASE("run: synthesize task exports the realization") {
  Json spec_json{
      {"task", "synthesize"},
      {"graph", Json{{"n", 3}, {"edges", Json::array({Json::array({0, 1, 1.0}),
                                                      Json::array({1, 2, 1.0})})}}},
      {"theta", Json::array({0.4, -0.8, 2.2})},
  };
  const RunOutput out = run(ProblemSpec::parse(spec_json));
  const Json& exported = out.report.at("unitary");
  CHECK(exported.at("cluster_residual").get<double>() < 1e-10);
  CHECK(exported.at("unitarity_residual").get<double>() < 1e-10);
  const AdjacencyGraph g = AdjacencyGraph::linear_cluster(3);
  const ComplexMatrix expected =
      cluster_unitary(g, AngleVector(std::vector<double>{0.4, -0.8, 2.2}))
          .unitary();
  const ComplexMatrix back =
      complex_matrix_from_json(exported.at("unitary"), 3, 3, "unitary");
  CHECK((back - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(exported.at("graph_hash") == g.hash_hex());
}

TEST_CASE("run: optimize-cluster reaches the reference target") {
  const Json spec_json = test_support::load_json("problems/linear4_optimize_cluster.json");
  const RunOutput out = run(ProblemSpec::parse(spec_json));
  CHECK(out.report.at("best_f1").get<double>() <= 0.37);
  REQUIRE(out.trace_csv.has_value());
  CHECK(out.trace_csv->rfind("generation,best_fitness,mean_fitness,sigma,"
                             "nullifier_1,nullifier_2,nullifier_3,nullifier_4",
                             0) == 0);
  // Normalized per-nullifier variances of the winner are all below shot.
  const auto normalized =
      out.report.at("nullifiers").at("normalized").get<std::vector<double>>();
  for (double value : normalized) CHECK(value < 1.0);
}

TEST_CASE("run: mbqc task reference value") {
  Json spec_json{
      {"task", "mbqc"},
      {"graph", Json{{"n", 3}, {"edges", Json::array({Json::array({0, 1, 1.0}),
                                                      Json::array({1, 2, 1.0})})}}},
      {"squeezing_db", Json::array({0.0, 0.0, 0.0})},
      {"plan", Json{{"preset", "fourier"}}},
      {"theta", Json::array({0.0, 0.0, 0.0})},
  };
  const RunOutput out = run(ProblemSpec::parse(spec_json));
  CHECK(out.report.at("excess").at("f2").get<double>() ==
        Catch::Approx(5.0).margin(1e-10));
  CHECK_FALSE(out.trace_csv.has_value());
}

TEST_CASE("run: optimize tasks produce traces and resolved optimizer config") {
  Json spec_json{
      {"task", "optimize-mbqc"},
      {"graph", Json{{"n", 3}, {"edges", Json::array({Json::array({0, 1, 1.0}),
                                                      Json::array({1, 2, 1.0})})}}},
      {"squeezing_db", Json::array({-7.0, -6.0, -4.0})},
      {"plan", Json{{"preset", "fourier"}}},
      {"seed", 3},
      {"optimizer", Json{{"max_generations", 60}, {"starts", 3}}},
  };
  const RunOutput out = run(ProblemSpec::parse(spec_json));
  REQUIRE(out.trace_csv.has_value());
  CHECK(out.trace_csv->rfind("generation,best_fitness,mean_fitness,sigma", 0) ==
        0);
  CHECK(out.report.at("config").at("optimizer").at("max_generations") == 60);
  CHECK(out.report.at("config").at("optimizer").at("population") == 16);
  CHECK(out.report.at("starts").size() == 3);
  CHECK(out.report.at("best_f2").get<double>() < 1.4);
}
