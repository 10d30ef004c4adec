// Copyright 2026 The bigmarket Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver for scenario sweeps.
//
//   bigmarket run <config> [--out DIR] [--seed-override S] [--jobs J]
//                          [--filter SCENARIO_ID]
//
// Exit codes: 0 all assertions passed, 1 an assertion failed, 2 the config
// or command line was rejected.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "harness/config.h"
#include "harness/runner.h"

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

int Run(const std::string& config_path, const std::string& out_dir,
        std::optional<uint64_t> seed_override, int jobs,
        const std::string& filter) {
  using namespace bigmarket::harness;
  auto config = LoadConfig(config_path);
  if (!config.ok()) {
    std::cerr << config_path << ": " << config.status().message() << "\n";
    return kExitUsage;
  }
  std::vector<const Scenario*> selected;
  for (const Scenario& s : config->scenarios) {
    if (filter.empty() || s.id == filter) selected.push_back(&s);
  }
  if (selected.empty()) {
    std::cerr << "no scenario with id '" << filter << "' in " << config_path
              << "\n";
    return kExitUsage;
  }
  RunOptions options;
  options.seed_override = seed_override;
  options.jobs = jobs;
  std::vector<ScenarioResult> results;
  for (const Scenario* s : selected) {
    auto result = RunScenario(*s, options);
    if (!result.ok()) {
      std::cerr << result.status().message() << "\n";
      return kExitUsage;
    }
    std::cout << s->id << ": " << result->rows << " rows, "
              << (result->passed() ? "pass" : "FAIL") << " ("
              << result->wall_seconds << " s)\n";
    results.push_back(*std::move(result));
  }
  if (auto s = WriteResults(results, out_dir); !s.ok()) {
    std::cerr << s.message() << "\n";
    return kExitUsage;
  }
  bool passed = true;
  for (const ScenarioResult& r : results) {
    for (const AssertionOutcome& a : r.assertions) {
      if (a.passed()) continue;
      passed = false;
      std::cerr << r.id << ": assertion " << a.name << " failed " << a.failed
                << "/" << a.checked << "; first: " << a.first_failure << "\n";
    }
  }
  return passed ? 0 : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large-market equilibrium and price-of-anarchy experiments"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run the scenarios of a config");
  std::string config_path;
  const char* env_out = std::getenv("BIGMARKET_OUT_DIR");
  std::string out_dir = env_out != nullptr ? env_out : "bigmarket_out";
  std::optional<uint64_t> seed_override;
  int jobs = 1;
  std::string filter;
  run->add_option("config", config_path, "Scenario config (JSON)")
      ->required();
  run->add_option("--out", out_dir,
                  "Output directory (default $BIGMARKET_OUT_DIR or "
                  "./bigmarket_out)");
  run->add_option("--seed-override", seed_override,
                  "Replace every scenario's seed list with this seed");
  run->add_option("--jobs", jobs, "Worker threads")
      ->check(CLI::Range(1, 1024));
  run->add_option("--filter", filter, "Only run the scenario with this id");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  return Run(config_path, out_dir, seed_override, jobs, filter);
}
