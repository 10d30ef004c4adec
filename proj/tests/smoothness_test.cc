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

#include "bigmarket/smoothness.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace bigmarket {
namespace {

std::vector<AuctionValuation> SingleGood(std::vector<double> values) {
  std::vector<AuctionValuation> out;
  for (double v : values) out.push_back(*AuctionValuation::UnitDemand({v}));
  return out;
}

TEST(PriceBracketTest, TruthfulBidHasFullSlack) {
  const auto truth = SingleGood({0.9, 0.7, 0.6});
  const SmoothnessParams params{0.2, 1.0, 0};
  const Multiplicity n = {5};
  const auto verdict = VerifyPriceBracket(truth, truth, n, 0,
                                          PricingRule::English(), params);
  ASSERT_TRUE(verdict.ok());
  EXPECT_TRUE(verdict->precondition);
  EXPECT_TRUE(verdict->lower_holds);
  EXPECT_TRUE(verdict->upper_holds);
  EXPECT_DOUBLE_EQ(verdict->worst_slack, (params.k + 1) * params.epsilon);
}

TEST(PriceBracketTest, BadDrawFailsPrecondition) {
  // Two copies for three bidders: a third copy drops the price 0.6 -> 0.
  const auto truth = SingleGood({0.9, 0.7, 0.6});
  const SmoothnessParams params{0.05, 1.0, 0};
  const auto verdict = VerifyPriceBracket(truth, truth, Multiplicity{2}, 0,
                                          PricingRule::English(), params);
  ASSERT_TRUE(verdict.ok());
  EXPECT_FALSE(verdict->precondition);
  // The lower bracket is checked on every draw.
  EXPECT_TRUE(verdict->lower_holds);
}

TEST(PriceBracketTest, RejectsBadBidderIndex) {
  const auto truth = SingleGood({0.9});
  EXPECT_FALSE(VerifyPriceBracket(truth, truth, Multiplicity{3}, 4,
                                  PricingRule::English(), {})
                   .ok());
}

TEST(SmoothTest, TruthfulProfileHolds) {
  const auto truth = SingleGood({0.9, 0.7, 0.6});
  const auto verdict = VerifySmoothInequality(
      truth, truth, Multiplicity{5}, 1, PricingRule::English(), {0.2, 1.0, 0});
  ASSERT_TRUE(verdict.ok());
  EXPECT_TRUE(verdict->precondition);
  EXPECT_TRUE(verdict->holds);
  EXPECT_GE(verdict->lhs, verdict->rhs);
}

TEST(SmoothTest, PreconditionGateSkipsBadDraws) {
  const auto truth = SingleGood({0.9, 0.7, 0.6});
  const auto verdict =
      VerifySmoothInequality(truth, truth, Multiplicity{2}, 0,
                             PricingRule::English(), {0.05, 1.0, 0});
  ASSERT_TRUE(verdict.ok());
  EXPECT_FALSE(verdict->precondition);
}

// Property: random matroid-rank truths, random shaded or inflated bids, and
// every rule; both inequalities hold whenever the precondition does.
TEST(SmoothPropertyTest, RandomDeviationsRespectBothInequalities) {
  std::mt19937_64 rng(61);
  const PricingRule rules[] = {PricingRule::English(), PricingRule::Dutch(),
                               *PricingRule::Mix(0.5)};
  int gated = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 2)(rng);
    const int bidders = std::uniform_int_distribution<int>(2, 4)(rng);
    const BidProfile truth =
        oracle::RandomMatroidProfile(rng, bidders, m, 1, false);
    BidProfile bids;
    for (const auto& v : truth) {
      bids.push_back(
          v.Scaled(oracle::Uniform(rng, 0, 1.2), oracle::Uniform(rng, 0, 0.1)));
    }
    const SmoothnessParams params{oracle::Uniform(rng, 0.05, 0.6), 1.0, 0};
    const Multiplicity n = oracle::RandomMultiplicity(rng, m, 2, 6);
    const int i = std::uniform_int_distribution<int>(0, bidders - 1)(rng);
    const PricingRule& rule = rules[trial % 3];
    const auto bracket = VerifyPriceBracket(truth, bids, n, i, rule, params);
    ASSERT_TRUE(bracket.ok()) << bracket.status();
    EXPECT_TRUE(bracket->lower_holds);
    const auto smooth = VerifySmoothInequality(truth, bids, n, i, rule, params);
    ASSERT_TRUE(smooth.ok());
    EXPECT_EQ(bracket->precondition, smooth->precondition);
    if (!bracket->precondition) continue;
    ++gated;
    EXPECT_TRUE(bracket->upper_holds) << "slack " << bracket->worst_slack;
    EXPECT_TRUE(smooth->holds) << smooth->lhs << " < " << smooth->rhs;
  }
  EXPECT_GT(gated, 20);
}

TEST(GoodForAllGoodsTest, RequiresMoreThanKPlusOneCopies) {
  PriceOracle oracle(SingleGood({0.5}));
  EXPECT_FALSE(*GoodForAllGoods(oracle, Multiplicity{2}, {1.0, 1.0, 1}));
  EXPECT_TRUE(*GoodForAllGoods(oracle, Multiplicity{3}, {1.0, 1.0, 1}));
}

}  // namespace
}  // namespace bigmarket
