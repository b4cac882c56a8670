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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "clusteropt/clusteropt.hpp"

namespace {

// Exit codes: 0 success, 2 malformed JSON, 3 validation/dimension errors.
constexpr int kExitOk = 0;
constexpr int kExitBadJson = 2;
constexpr int kExitBadSpec = 3;

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "clusteropt: synthesize cluster-generating linear networks, evaluate "
      "finite-squeezing noise, and optimize the free network angles"};
  std::string spec_path;
  std::string out_path;
  std::string trace_path;
  std::uint64_t seed = 0;
  bool quiet = false;
  app.add_option("--spec", spec_path, "problem description JSON file")
      ->required();
  app.add_option("--out", out_path, "write the report JSON here (default: stdout)");
  app.add_option("--trace", trace_path, "write the per-generation CSV trace here");
  auto* seed_option =
      app.add_option("--seed", seed, "override the spec's random seed");
  app.add_flag("--quiet", quiet, "suppress notes on stderr");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "error: cannot open spec file '" << spec_path << "'\n";
    return kExitBadSpec;
  }

  clusteropt::Json doc;
  try {
    doc = clusteropt::Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries the line/column of the failure.
    std::cerr << "error: malformed JSON in '" << spec_path << "': " << e.what()
              << "\n";
    return kExitBadJson;
  }

  try {
    clusteropt::ProblemSpec spec = clusteropt::ProblemSpec::parse(doc);
    if (seed_option->count() > 0) {
      spec.optimizer.seed = seed;
      spec.seed_provided = true;
    }
    if (!spec.seed_provided) {
      std::random_device device;
      spec.optimizer.seed = (static_cast<std::uint64_t>(device()) << 32) ^
                            static_cast<std::uint64_t>(device());
      if (!quiet) {
        std::cerr << "note: no seed given; drew " << spec.optimizer.seed
                  << "\n";
      }
    }

    const clusteropt::RunOutput result = clusteropt::run(spec);
    const std::string report = result.report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << report;
    } else if (!write_text(out_path, report)) {
      std::cerr << "error: cannot write report to '" << out_path << "'\n";
      return kExitBadSpec;
    }
    if (result.trace_csv && !trace_path.empty()) {
      if (!write_text(trace_path, *result.trace_csv)) {
        std::cerr << "error: cannot write trace to '" << trace_path << "'\n";
        return kExitBadSpec;
      }
    } else if (result.trace_csv && !quiet) {
      std::cerr << "note: a trace was produced; pass --trace <file> to keep it\n";
    }
    return kExitOk;
  } catch (const clusteropt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadSpec;
  }
}
