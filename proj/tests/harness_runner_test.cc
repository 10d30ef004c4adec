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

#include "harness/runner.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "harness/config.h"
#include "harness/generators.h"

namespace bigmarket::harness {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const Scenario& Find(const Config& config, const std::string& id) {
  for (const Scenario& s : config.scenarios) {
    if (s.id == id) return s;
  }
  ADD_FAILURE() << "no scenario " << id;
  return config.scenarios.front();
}

class BundledTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto config = LoadConfig(BIGMARKET_BUNDLED_CONFIG);
    ASSERT_TRUE(config.ok()) << config.status();
    config_ = *std::move(config);
  }
  Config config_;
};

TEST_F(BundledTest, CsvMatchesGoldenFiles) {
  for (const char* id : {"walrasian_deterministic_supply", "walrasian_binomial_sweep",
                         "fisher_cobb_douglas", "fisher_reserve_regret",
                         "probe_binomial", "probe_small_epsilon"}) {
    const auto result = RunScenario(Find(config_, id));
    ASSERT_TRUE(result.ok()) << result.status();
    EXPECT_TRUE(result->passed()) << id;
    const std::string golden =
        ReadFile(std::string(BIGMARKET_GOLDEN_DIR) + "/" + id + ".csv");
    EXPECT_EQ(result->csv, golden) << id;
    const std::string header = result->csv.substr(0, result->csv.find('\n'));
    EXPECT_EQ(header, CsvHeader(result->setting));
  }
}

TEST_F(BundledTest, ThreadCountDoesNotChangeOutput) {
  const Scenario& s = Find(config_, "fisher_cobb_douglas");
  RunOptions serial, parallel;
  parallel.jobs = 3;
  const auto a = RunScenario(s, serial);
  const auto b = RunScenario(s, parallel);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->csv, b->csv);
  EXPECT_EQ(a->details.dump(), b->details.dump());
}

TEST_F(BundledTest, SeedOverrideReplacesSeeds) {
  RunOptions options;
  options.seed_override = 99;
  const auto result =
      RunScenario(Find(config_, "walrasian_binomial_sweep"), options);
  ASSERT_TRUE(result.ok());
  EXPECT_NE(result->csv.find(",99,"), std::string::npos);
  EXPECT_EQ(result->csv.find(",1,english"), std::string::npos);
}

TEST_F(BundledTest, WriteResultsProducesCsvAndSummary) {
  const auto result = RunScenario(Find(config_, "probe_small_epsilon"));
  ASSERT_TRUE(result.ok());
  const std::string dir =
      (std::filesystem::temp_directory_path() / "bigmarket_runner_test")
          .string();
  std::filesystem::remove_all(dir);
  ASSERT_TRUE(WriteResults({*result}, dir).ok());
  EXPECT_EQ(ReadFile(dir + "/probe_small_epsilon.csv"), result->csv);
  const std::string summary = ReadFile(dir + "/summary.json");
  EXPECT_NE(summary.find("probe_small_epsilon"), std::string::npos);
  EXPECT_NE(summary.find("bad_event_probability"), std::string::npos);
}

TEST(AuditTest, BinomialUniformSatisfiesAllAssumptions) {
  ValueModel values;
  MultiplicityModel multiplicity;
  const auto auction = GenerateAuction(1, 1, values, multiplicity, 64, 1);
  ASSERT_TRUE(auction.ok());
  AssumptionOverrides overrides;
  overrides.zeta = 1.0;
  // Every bidder wins whenever copies suffice; E[SW(OPT)] is at least
  // 0.5 per expected copy.
  const AssumptionAudit audit =
      AuditAssumptions(*auction, values, overrides, 0.5 * 32);
  EXPECT_DOUBLE_EQ(audit.constants.zeta, 1.0);
  EXPECT_TRUE(audit.bounded_value);
  EXPECT_TRUE(audit.welfare_linear);
  EXPECT_TRUE(audit.large_supply);
  EXPECT_TRUE(audit.value_floor);
  EXPECT_TRUE(audit.uncertain_supply);
  EXPECT_TRUE(audit.all());
}

TEST(AuditTest, DeterministicSupplyIsFlagged) {
  ValueModel values;
  MultiplicityModel multiplicity;
  multiplicity.kind = MultiplicityModel::Kind::kDeterministic;
  multiplicity.copies = {4};
  const auto auction = GenerateAuction(1, 1, values, multiplicity, 8, 1);
  ASSERT_TRUE(auction.ok());
  const AssumptionAudit audit = AuditAssumptions(*auction, values, {}, 3.0);
  EXPECT_EQ(audit.max_point_mass, 1.0);
  EXPECT_FALSE(audit.uncertain_supply);
  EXPECT_FALSE(audit.all());
}

TEST(AuditTest, ParetoValuesBoundedInExpectation) {
  ValueModel values;
  values.kind = ValueModel::Kind::kPareto;
  values.shape = 3.0;
  values.scale = 0.5;
  MultiplicityModel multiplicity;
  const auto auction = GenerateAuction(1, 1, values, multiplicity, 64, 3);
  ASSERT_TRUE(auction.ok());
  AssumptionOverrides overrides;
  overrides.zeta = 0.8;  // above the mean 0.75
  const AssumptionAudit audit = AuditAssumptions(*auction, values, overrides, 24);
  EXPECT_DOUBLE_EQ(audit.zeta, 0.75);
  EXPECT_TRUE(audit.bounded_value);
  // The sample mean of a heavy-tailed draw sits near the analytic mean.
  EXPECT_NEAR(audit.sample_mean, 0.75, 0.15);
}

}  // namespace
}  // namespace bigmarket::harness
