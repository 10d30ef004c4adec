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

#ifndef BIGMARKET_TOOLS_HARNESS_CONFIG_H_
#define BIGMARKET_TOOLS_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/regret.h"
#include "bigmarket/walrasian.h"

namespace bigmarket::harness {

inline constexpr int kSchemaVersion = 1;

enum class Setting { kWalrasian, kFisher, kProbe };

// Item weights of generated matroid valuations.
struct ValueModel {
  enum class Kind { kUniform, kPareto, kExplicit };
  Kind kind = Kind::kUniform;
  double low = 0.5;    // uniform
  double high = 1.0;   // uniform
  double shape = 3.0;  // pareto, > 1 for a finite mean
  double scale = 0.5;  // pareto minimum
  // explicit: one weight row per bidder; fixes N.
  std::vector<std::vector<double>> weights;
};

struct MultiplicityModel {
  enum class Kind { kBinomial, kDeterministic };
  Kind kind = Kind::kBinomial;
  // Binomial trials per good: a fixed count, or N when unset.
  std::optional<int> trials;
  double p = 0.5;
  std::vector<int> copies;  // deterministic
};

struct AssumptionOverrides {
  std::optional<double> zeta;
  std::optional<double> rho_prime;
  std::optional<double> lambda;
  std::optional<double> alpha;
};

struct SearchSettings {
  int restarts = 32;
  double exhaustive_limit = 1e5;
  int max_rounds = 200;
};

struct RegretSettings {
  bool enabled = false;
  int rounds = 10000;
  Feedback feedback = Feedback::kFullInformation;
};

struct WalrasianSettings {
  int goods = 1;
  int demand_cap = 1;
  ValueModel values;
  MultiplicityModel multiplicity;
  std::vector<PricingRule> rules{PricingRule::English()};
  std::vector<double> gammas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> deltas{0.0};
  double max_exact_atoms = 1e4;
  int monte_carlo_draws = 2000;
};

struct FisherSettings {
  enum class Family { kLinear, kCobbDouglas, kCes, kMixed };
  int goods = 2;
  Family family = Family::kCobbDouglas;
  double rho = 0.5;
  double weight_low = 0.2;
  double weight_high = 1.0;
  double budget = 1.0;
  // Budgets are drawn from [budget·(1 - spread), budget].
  double budget_spread = 0.0;
  // Reserves as a fraction of truthful prices, at most 1/4.
  std::optional<double> reserve_fraction;
  std::vector<double> report_shifts{0.05, 0.1, 0.2};
};

struct ProbeSettings {
  int goods = 1;
  int demand_cap = 1;
  ValueModel values;
  MultiplicityModel multiplicity;
  int k = 1;
  std::optional<double> epsilon;
  std::optional<double> cap_u;
  double max_exact_atoms = 1e4;
  int monte_carlo_draws = 2000;
};

struct Scenario {
  std::string id;
  Setting setting = Setting::kWalrasian;
  // Bidder counts N (walrasian, probe) or largeness L (fisher, one buyer per
  // unit of L).
  std::vector<int> sweep;
  std::vector<uint64_t> seeds;
  std::string output;  // CSV file name, default "<id>.csv"
  SearchSettings search;
  RegretSettings regret;
  AssumptionOverrides assumptions;
  WalrasianSettings walrasian;
  FisherSettings fisher;
  ProbeSettings probe;
};

struct Config {
  int schema_version = kSchemaVersion;
  std::vector<Scenario> scenarios;
};

// Parses and validates a JSON config. Errors are InvalidArgument with either
// "line L, column C" for syntax errors or the JSON path of the offending
// field.
absl::StatusOr<Config> ParseConfig(const std::string& text);

absl::StatusOr<Config> LoadConfig(const std::string& path);

std::string SettingName(Setting setting);

}  // namespace bigmarket::harness

#endif  // BIGMARKET_TOOLS_HARNESS_CONFIG_H_
