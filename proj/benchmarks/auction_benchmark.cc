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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "bigmarket/valuation.h"
#include "bigmarket/walrasian.h"

namespace bigmarket {
namespace {

BidProfile RandomBids(int bidders, int goods, int cap, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  BidProfile bids;
  for (int i = 0; i < bidders; ++i) {
    std::vector<double> w(goods);
    for (double& x : w) x = weight(rng);
    bids.push_back(*AuctionValuation::KDemand(std::move(w), cap));
  }
  return bids;
}

void BM_OptimalWelfare(benchmark::State& state) {
  const int bidders = state.range(0);
  const BidProfile bids = RandomBids(bidders, 3, 2, 1);
  const Multiplicity n(3, bidders / 2);
  for (auto _ : state) benchmark::DoNotOptimize(OptimalWelfare(bids, n));
}
BENCHMARK(BM_OptimalWelfare)->RangeMultiplier(4)->Range(4, 256);

void BM_EnglishPrices(benchmark::State& state) {
  const int bidders = state.range(0);
  const BidProfile bids = RandomBids(bidders, 2, 1, 2);
  const Multiplicity n(2, bidders / 3);
  for (auto _ : state) benchmark::DoNotOptimize(EnglishPrices(bids, n));
}
BENCHMARK(BM_EnglishPrices)->RangeMultiplier(4)->Range(4, 256);

void BM_RunMechanismDutch(benchmark::State& state) {
  const int bidders = state.range(0);
  const BidProfile bids = RandomBids(bidders, 2, 1, 3);
  const Multiplicity n(2, bidders / 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RunMechanism(bids, n, PricingRule::Dutch(), false));
  }
}
BENCHMARK(BM_RunMechanismDutch)->RangeMultiplier(4)->Range(4, 64);

}  // namespace
}  // namespace bigmarket

BENCHMARK_MAIN();
