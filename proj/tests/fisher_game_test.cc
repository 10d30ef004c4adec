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

#include "bigmarket/fisher_game.h"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace bigmarket {
namespace {

FisherUtility Cd(std::vector<double> a) {
  return *FisherUtility::CobbDouglas(std::move(a));
}

FisherUtility Lin(std::vector<double> a) {
  return *FisherUtility::Linear(std::move(a));
}

std::vector<double> RandomSimplex(std::mt19937_64& rng, int m) {
  std::vector<double> w(m);
  double total = 0.0;
  for (double& x : w) total += (x = oracle::Uniform(rng, 0.1, 1.0));
  for (double& x : w) x /= total;
  return w;
}

FisherInstance Scaled(std::vector<double> e, std::vector<FisherUtility> u,
                      std::vector<double> r = {}) {
  auto base = FisherInstance::Create(std::move(e), std::move(u));
  auto scaled = ConsistentlyScaled(*base);
  if (!r.empty()) scaled->reserves = std::move(r);
  return *std::move(scaled);
}

std::vector<std::vector<FisherUtility>> Grids(const FisherInstance& instance,
                                              std::vector<double> shifts) {
  std::vector<std::vector<FisherUtility>> grids;
  for (const FisherUtility& u : instance.utilities) {
    grids.push_back(ReportGrid(u, shifts));
  }
  return grids;
}

TEST(BoundsTest, Values) {
  EXPECT_NEAR(FisherPoaBound(2, 8), 0.7788007831, 1e-10);
  EXPECT_NEAR(FisherReservePoaBound(1, 10), 0.8187307531, 1e-10);
  EXPECT_DOUBLE_EQ(FisherReserveStatedBound(1, 10), std::exp(-0.04));
}

TEST(CompressPricesTest, HandExample) {
  const auto c = CompressPrices(std::vector<double>{0.2, 1.8},
                                std::vector<double>{1, 1}, 0.5, 2.0);
  ASSERT_TRUE(c.ok());
  EXPECT_DOUBLE_EQ(c->prices[0], 0.5);
  EXPECT_DOUBLE_EQ(c->prices[1], 1.5);
  EXPECT_DOUBLE_EQ(c->t, 1.5);
}

TEST(CompressPricesTest, ReferencePricesAreFixed) {
  const std::vector<double> p = {0.5, 1.0, 1.5};
  const auto c = CompressPrices(p, p, 0.3, 3.0);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->prices, p);
  EXPECT_DOUBLE_EQ(c->t, 1.0);
}

TEST(CompressPricesTest, SingleGoodKeepsQ) {
  const auto c = CompressPrices(std::vector<double>{2.0},
                                std::vector<double>{1.0}, 0.5, 2.0);
  ASSERT_TRUE(c.ok());
  EXPECT_DOUBLE_EQ(c->prices[0], 2.0);
}

TEST(CompressPricesTest, RejectsBadInput) {
  EXPECT_FALSE(CompressPrices(std::vector<double>{1.0},
                              std::vector<double>{1.0}, 1.5, 1.0)
                   .ok());
  EXPECT_FALSE(CompressPrices(std::vector<double>{1.0, 1.0},
                              std::vector<double>{1.0, 1.0}, 0.5, 3.0)
                   .ok());
}

TEST(CompressPricesTest, PropertySumAndBand) {
  std::mt19937_64 rng(121);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<double> p_star(m), q(m);
    for (double& x : p_star) x = oracle::Uniform(rng, 0.1, 2.0);
    const double budget = std::accumulate(p_star.begin(), p_star.end(), 0.0);
    double total = 0.0;
    for (double& x : q) total += (x = oracle::Uniform(rng, 0.0, 1.0));
    for (double& x : q) x *= budget / total;
    const double l = oracle::Uniform(rng, 0.05, 1.0);
    const auto c = CompressPrices(q, p_star, l, budget);
    ASSERT_TRUE(c.ok()) << c.status();
    EXPECT_GE(c->t, 1.0);
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      sum += c->prices[j];
      EXPECT_GE(c->prices[j], l * p_star[j] * (1 - 1e-12));
      EXPECT_LE(c->prices[j], c->t * p_star[j] * (1 + 1e-12));
    }
    EXPECT_NEAR(sum, budget, 1e-10 * budget);
  }
}

TEST(ReportGridTest, TruthFirstAndDistinct) {
  const FisherUtility truth = Lin({1, 2});
  const auto grid = ReportGrid(truth);
  ASSERT_EQ(grid.size(), 13u);
  EXPECT_EQ(grid[0].weights(), truth.weights());
  const auto cd = ReportGrid(Cd({0.5, 0.5}), std::vector<double>{0.2});
  for (const auto& r : cd) {
    EXPECT_NEAR(r.weights()[0] + r.weights()[1], 1.0, 1e-15);
  }
  // A single Cobb-Douglas good has nothing to misreport.
  EXPECT_EQ(ReportGrid(Cd({1.0})).size(), 1u);
}

TEST(ScalingTest, ConsistentScalingEqualizesRatios) {
  const auto base = FisherInstance::Create(
      {1, 2, 1.5}, {Lin({1, 2}), Cd({0.3, 0.7}), Lin({2, 1})});
  ASSERT_TRUE(base.ok());
  const auto scaled = ConsistentlyScaled(*base);
  ASSERT_TRUE(scaled.ok());
  const auto audit = AuditScaling(*scaled);
  ASSERT_TRUE(audit.ok());
  EXPECT_TRUE(audit->consistent);
  EXPECT_NEAR(audit->t, 1.0, 1e-9);
  const auto before = SolveFisher(*base, base->utilities);
  const auto after = SolveFisher(*scaled, scaled->utilities);
  for (int j = 0; j < 2; ++j) {
    EXPECT_NEAR(before->prices[j], after->prices[j], 1e-9);
  }
}

TEST(StrategicOutcomeTest, TruthMatchesEquilibriumUtilities) {
  const FisherInstance instance =
      Scaled({1, 2}, {Cd({0.3, 0.7}), Cd({0.6, 0.4})});
  const auto outcome = ComputeStrategicOutcome(instance, instance.utilities);
  ASSERT_TRUE(outcome.ok());
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(outcome->true_utilities[i], outcome->equilibrium.utilities[i],
                1e-12);
    EXPECT_NEAR(outcome->true_utilities[i], instance.budgets[i], 1e-9);
  }
}

TEST(StrategicOutcomeTest, CobbDouglasMisreportByClosedForm) {
  const std::vector<double> e = {1, 1};
  const auto instance = *FisherInstance::Create(
      e, {Cd({0.5, 0.5}), Cd({0.9, 0.1})});
  const std::vector<FisherUtility> reports = {Cd({0.2, 0.8}), Cd({0.9, 0.1})};
  const auto outcome = ComputeStrategicOutcome(instance, reports);
  ASSERT_TRUE(outcome.ok());
  // p_j = Σ e_i a'_ij and x_0j = e_0 a'_0j / p_j.
  const double p0 = 0.2 + 0.9, p1 = 0.8 + 0.1;
  const double x0 = 0.2 / p0, x1 = 0.8 / p1;
  EXPECT_NEAR(outcome->true_utilities[0], std::sqrt(x0 * x1), 1e-14);
}

TEST(StrategicOutcomeTest, SingleBuyerIgnoresReport) {
  const auto instance = *FisherInstance::Create({2}, {Cd({0.3, 0.7})});
  const auto truth = ComputeStrategicOutcome(instance, instance.utilities);
  for (const auto& report : ReportGrid(instance.utilities[0])) {
    const auto outcome =
        ComputeStrategicOutcome(instance, std::vector<FisherUtility>{report});
    ASSERT_TRUE(outcome.ok());
    EXPECT_NEAR(outcome->true_utilities[0], truth->true_utilities[0], 1e-12);
  }
}

TEST(FisherGameTest, TruthfulOnlyGridsGiveRatioOne) {
  const FisherInstance instance =
      Scaled({1, 1, 1}, {Lin({1, 2}), Lin({2, 1}), Lin({1, 1})});
  std::vector<std::vector<FisherUtility>> grids;
  for (const auto& u : instance.utilities) grids.push_back({u});
  auto game = FisherGame::Create(instance, grids);
  ASSERT_TRUE(game.ok());
  const auto search = SearchFisherEquilibria(*game);
  ASSERT_TRUE(search.ok());
  ASSERT_EQ(search->equilibria.size(), 1u);
  EXPECT_NEAR(search->equilibria[0].ratio_gm, 1.0, 1e-12);
  EXPECT_NEAR(search->equilibria[0].ratio_sum, 1.0, 1e-12);
}

TEST(FisherGameTest, RejectsGridWithoutTruthFirst) {
  const FisherInstance instance = Scaled({1, 1}, {Lin({1, 2}), Lin({2, 1})});
  EXPECT_FALSE(FisherGame::Create(instance, {{Lin({1, 1})}, {Lin({2, 1})}}).ok());
}

TEST(FisherGameTest, IdenticalCobbDouglasBuyersStayAboveBound) {
  std::vector<FisherUtility> u(8, Cd({0.5, 0.5}));
  const FisherInstance instance = Scaled(std::vector<double>(8, 1.0), u);
  auto game = FisherGame::Create(instance, Grids(instance, {0.2}));
  ASSERT_TRUE(game.ok());
  EquilibriumSearchOptions options;
  options.exhaustive_limit = 4e5;
  const auto search = SearchFisherEquilibria(*game, options);
  ASSERT_TRUE(search.ok());
  EXPECT_TRUE(search->exhaustive);
  ASSERT_FALSE(search->equilibria.empty());
  const double bound = FisherPoaBound(2, 8);
  for (const auto& eq : search->equilibria) {
    EXPECT_EQ(eq.certification.kind, Certification::Kind::kExactNash);
    EXPECT_GE(eq.ratio_gm, bound);
    EXPECT_GE(eq.ratio_sum, bound);
  }
}

TEST(FisherGameTest, DeviationIsWitnessed) {
  // Buyer 1 cares mostly about good 0; buyer 0 gains by overstating its
  // weight on good 0, which shifts spending toward the good it shares.
  const FisherInstance instance =
      Scaled({1, 1}, {Cd({0.5, 0.5}), Cd({0.9, 0.1})});
  auto game = FisherGame::Create(instance, Grids(instance, {0.2}));
  ASSERT_TRUE(game.ok());
  const auto cert = CertifyFisherNash(*game, {0, 0});
  ASSERT_TRUE(cert.ok());
  EXPECT_EQ(cert->kind, Certification::Kind::kNotEquilibrium);
  ASSERT_GE(cert->player, 0);
  EXPECT_GT(cert->gain, 1e-3);
  StrategyProfile deviation = {0, 0};
  deviation[cert->player] = cert->deviation;
  const auto before = game->Evaluate({0, 0});
  const auto after = game->Evaluate(deviation);
  ASSERT_TRUE(before.ok() && after.ok());
  EXPECT_NEAR((*after)[cert->player] - (*before)[cert->player], cert->gain,
              1e-12);
}

TEST(PricePerturbationTest, TruthfulReportsHold) {
  const FisherInstance instance =
      Scaled({1, 2, 1}, {Cd({0.2, 0.8}), Cd({0.5, 0.5}), Cd({0.7, 0.3})});
  for (int i = 0; i < 3; ++i) {
    const auto v = VerifyPricePerturbation(instance, instance.utilities, i);
    ASSERT_TRUE(v.ok());
    EXPECT_TRUE(v->holds());
    EXPECT_GE(v->worst_slack, 0.0);
  }
  EXPECT_FALSE(VerifyPricePerturbation(
                   *FisherInstance::Create({1}, {Cd({1.0})}),
                   std::vector<FisherUtility>{Cd({1.0})}, 0)
                   .ok());
}

TEST(PricePerturbationTest, PropertyRandomMisreports) {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int buyers = std::uniform_int_distribution<int>(2, 4)(rng);
    std::vector<double> e(buyers);
    std::vector<FisherUtility> u;
    const bool linear = trial % 2;
    for (int i = 0; i < buyers; ++i) {
      e[i] = oracle::Uniform(rng, 0.5, 2.0);
      const auto w = RandomSimplex(rng, m);
      u.push_back(linear ? Lin(w) : Cd(w));
    }
    const FisherInstance instance = Scaled(e, u);
    std::vector<FisherUtility> reports;
    for (const auto& t : instance.utilities) {
      const auto grid = ReportGrid(t);
      reports.push_back(
          grid[std::uniform_int_distribution<int>(0, grid.size() - 1)(rng)]);
    }
    const int i = std::uniform_int_distribution<int>(0, buyers - 1)(rng);
    const auto v = VerifyPricePerturbation(instance, reports, i);
    ASSERT_TRUE(v.ok()) << v.status();
    EXPECT_TRUE(v->holds()) << "slack " << v->worst_slack;
    const auto smooth = VerifySmoothFisher(instance, reports);
    ASSERT_TRUE(smooth.ok());
    EXPECT_TRUE(smooth->holds) << smooth->lhs << " < " << smooth->rhs;
  }
}

TEST(SmoothFisherTest, TruthHasSlack) {
  const FisherInstance instance = Scaled({1, 3}, {Lin({1, 2}), Lin({2, 1})});
  const auto v = VerifySmoothFisher(instance, instance.utilities);
  ASSERT_TRUE(v.ok());
  EXPECT_TRUE(v->holds);
  EXPECT_NEAR(v->lhs - v->rhs, 2 * 3.0, 1e-9);
}

TEST(ReserveTest, PreconditionRequiresQuarterOfTruthfulPrice) {
  FisherInstance instance = Scaled({1, 1}, {Lin({1}), Lin({1})});
  // p* = 2 for the single good.
  instance.reserves = {0.5};
  EXPECT_TRUE(CheckReservePrecondition(instance).ok());
  instance.reserves = {0.6};
  EXPECT_FALSE(CheckReservePrecondition(instance).ok());
}

TEST(NoRegretFisherTest, TwoLinearBuyersOneGood) {
  FisherInstance instance = Scaled({1, 1}, {Lin({1}), Lin({1})});
  instance.reserves = {0.5};
  auto game = FisherGame::Create(instance, Grids(instance, {0.1, 0.2}));
  ASSERT_TRUE(game.ok());
  ASSERT_EQ(game->grid_size(0), 5);
  RegretConfig config;
  config.rounds = 10000;
  config.seed = 5;
  const auto run = RunNoRegretFisher(*game, config);
  ASSERT_TRUE(run.ok()) << run.status();
  EXPECT_TRUE(run->regret_within_budget);
  EXPECT_TRUE(run->holds);
  EXPECT_GE(run->average_welfare, run->rhs);
  EXPECT_DOUBLE_EQ(run->lambda, 4.0);
}

TEST(NoRegretFisherTest, TruthfulOnlyGridsKeepTruthfulWelfare) {
  FisherInstance instance = Scaled({1, 2}, {Lin({1, 2}), Lin({2, 1})});
  const auto p = SolveFisher(instance, instance.utilities);
  instance.reserves = {p->prices[0] / 4, p->prices[1] / 4};
  std::vector<std::vector<FisherUtility>> grids;
  for (const auto& u : instance.utilities) grids.push_back({u});
  auto game = FisherGame::Create(instance, grids);
  ASSERT_TRUE(game.ok());
  RegretConfig config;
  config.rounds = 100;
  const auto run = RunNoRegretFisher(*game, config);
  ASSERT_TRUE(run.ok());
  EXPECT_NEAR(run->average_welfare, run->truthful_welfare, 1e-9);
  EXPECT_TRUE(run->holds);
}

TEST(NoRegretFisherTest, RejectsMissingReserves) {
  const FisherInstance instance = Scaled({1, 1}, {Lin({1}), Lin({1})});
  auto game = FisherGame::Create(instance, Grids(instance, {0.1}));
  ASSERT_TRUE(game.ok());
  EXPECT_FALSE(RunNoRegretFisher(*game, {}).ok());
}

}  // namespace
}  // namespace bigmarket
