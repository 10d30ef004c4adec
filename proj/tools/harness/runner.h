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

#ifndef BIGMARKET_TOOLS_HARNESS_RUNNER_H_
#define BIGMARKET_TOOLS_HARNESS_RUNNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/multiplicity.h"
#include "harness/config.h"
#include "harness/generators.h"
#include "json.hpp"

namespace bigmarket::harness {

struct RunOptions {
  std::optional<uint64_t> seed_override;
  int jobs = 1;
};

// Estimated large-auction constants for one generated auction and whether
// each assumption holds with the scenario's (or estimated) constants.
struct AssumptionAudit {
  double zeta = 0.0;           // largest expected single-item value
  double sample_mean = 0.0;    // mean of the drawn item weights
  double rho = 0.0;            // E[SW(OPT)] / N
  double rho_chebyshev = 0.0;  // welfare density implied by the constants
  double rho_prime = 0.0;      // min over bidders of the best item value
  double lambda = 0.0;         // 1 - max_j Γ(n_j)/μ(n_j)
  double alpha = 0.0;          // min_j μ(n_j) / N
  double max_point_mass = 1.0; // F(N)
  bool bounded_value = false;     // E[max item value] ≤ zeta
  bool welfare_linear = false;    // E[SW(OPT)] ≥ rho·N
  bool large_supply = false;      // Γ(n_j) ≤ (1 - lambda)·μ(n_j), μ ≥ alpha·N
  bool value_floor = false;       // every bidder values some item ≥ rho'
  bool uncertain_supply = false;  // F(N) < 1
  bool all() const {
    return bounded_value && welfare_linear && large_supply && value_floor &&
           uncertain_supply;
  }
  LargeAuctionAssumptions constants;
};

// `expected_optimal_welfare` is E[SW(OPT)] under the true values.
AssumptionAudit AuditAssumptions(const GeneratedAuction& auction,
                                 const ValueModel& values,
                                 const AssumptionOverrides& overrides,
                                 double expected_optimal_welfare);

nlohmann::json AuditToJson(const AssumptionAudit& audit);

struct AssertionOutcome {
  std::string name;
  int checked = 0;
  int failed = 0;
  std::string first_failure;
  bool passed() const { return failed == 0; }
};

struct ScenarioResult {
  std::string id;
  Setting setting = Setting::kWalrasian;
  std::string output;
  std::string csv;  // header plus rows
  int rows = 0;
  std::vector<AssertionOutcome> assertions;
  nlohmann::json details = nlohmann::json::array();  // per task diagnostics
  double wall_seconds = 0.0;
  bool passed() const;
};

std::string CsvHeader(Setting setting);

// Runs every (sweep point, seed) task of `scenario`, fanned out over
// options.jobs threads; rows are merged in (sweep, seed) order, so the CSV
// depends only on the scenario and seeds.
absl::StatusOr<ScenarioResult> RunScenario(const Scenario& scenario,
                                           const RunOptions& options = {});

// Writes each result's CSV and summary.json into `out_dir`.
absl::Status WriteResults(const std::vector<ScenarioResult>& results,
                          const std::string& out_dir);

nlohmann::json SummaryJson(const std::vector<ScenarioResult>& results);

}  // namespace bigmarket::harness

#endif  // BIGMARKET_TOOLS_HARNESS_RUNNER_H_
