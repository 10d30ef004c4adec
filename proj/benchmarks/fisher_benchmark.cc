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
#include "bigmarket/fisher_market.h"
#include "bigmarket/fisher_utility.h"

namespace bigmarket {
namespace {

enum Family { kLinear, kCobbDouglas, kCes };

struct Market {
  std::vector<double> budgets;
  std::vector<FisherUtility> utilities;
};

Market RandomMarket(Family family, int buyers, int goods, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.1, 1.0);
  Market market;
  for (int i = 0; i < buyers; ++i) {
    market.budgets.push_back(draw(rng) + 0.5);
    std::vector<double> w(goods);
    double total = 0.0;
    for (double& x : w) total += (x = draw(rng));
    for (double& x : w) x /= total;
    switch (family) {
      case kLinear:
        market.utilities.push_back(*FisherUtility::Linear(w));
        break;
      case kCobbDouglas:
        market.utilities.push_back(*FisherUtility::CobbDouglas(w));
        break;
      case kCes:
        market.utilities.push_back(*FisherUtility::Ces(w, 0.5));
        break;
    }
  }
  return market;
}

void BM_SolveFisher(benchmark::State& state, Family family) {
  const Market market = RandomMarket(family, state.range(0), 4, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SolveEisenbergGale(market.budgets, market.utilities));
  }
}
BENCHMARK_CAPTURE(BM_SolveFisher, cobb_douglas, kCobbDouglas)
    ->RangeMultiplier(4)
    ->Range(4, 256);
BENCHMARK_CAPTURE(BM_SolveFisher, linear, kLinear)
    ->RangeMultiplier(4)
    ->Range(4, 64);
BENCHMARK_CAPTURE(BM_SolveFisher, ces, kCes)->RangeMultiplier(4)->Range(4, 64);

}  // namespace
}  // namespace bigmarket

BENCHMARK_MAIN();
