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

#include "harness/generators.h"

#include <cmath>
#include <random>
#include <vector>

#include "bigmarket/fisher_game.h"
#include "bigmarket/seed.h"
#include "bigmarket/valuation.h"

namespace bigmarket::harness {
namespace {

constexpr uint64_t kValueStream = 0x5641;
constexpr uint64_t kBudgetStream = 0x4255;

double DrawWeight(const ValueModel& values, std::mt19937_64& rng) {
  const double u = UnitUniform(rng());
  switch (values.kind) {
    case ValueModel::Kind::kUniform:
      return values.low + (values.high - values.low) * u;
    case ValueModel::Kind::kPareto:
      return values.scale / std::pow(1.0 - u, 1.0 / values.shape);
    case ValueModel::Kind::kExplicit:
      break;
  }
  return 0.0;
}

}  // namespace

double UnitUniform(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

absl::StatusOr<GeneratedAuction> GenerateAuction(
    int goods, int demand_cap, const ValueModel& values,
    const MultiplicityModel& multiplicity, int num_bidders, uint64_t seed) {
  std::mt19937_64 rng(DeriveSeed(seed, kValueStream, num_bidders));
  std::vector<AuctionValuation> valuations;
  for (int i = 0; i < num_bidders; ++i) {
    std::vector<double> w(goods);
    for (int j = 0; j < goods; ++j) {
      w[j] = values.kind == ValueModel::Kind::kExplicit ? values.weights[i][j]
                                                        : DrawWeight(values, rng);
    }
    auto v = demand_cap == 1 ? AuctionValuation::UnitDemand(std::move(w))
                             : AuctionValuation::KDemand(std::move(w), demand_cap);
    if (!v.ok()) return v.status();
    valuations.push_back(*std::move(v));
  }
  absl::StatusOr<MultiplicityDistribution> dist =
      multiplicity.kind == MultiplicityModel::Kind::kBinomial
          ? MultiplicityDistribution::IndependentBinomial(
                goods, multiplicity.trials.value_or(num_bidders),
                multiplicity.p)
          : MultiplicityDistribution::Deterministic(multiplicity.copies);
  if (!dist.ok()) return dist.status();
  auto instance = AuctionInstance::Create(goods, Multiplicity(goods, 0),
                                          std::move(valuations), demand_cap);
  if (!instance.ok()) return instance.status();
  return GeneratedAuction{*std::move(instance), *std::move(dist)};
}

absl::StatusOr<FisherInstance> GenerateFisher(const FisherSettings& settings,
                                              int largeness, uint64_t seed) {
  std::mt19937_64 rng(DeriveSeed(seed, kBudgetStream, largeness));
  const int m = settings.goods;
  std::vector<double> budgets;
  std::vector<FisherUtility> utilities;
  for (int i = 0; i < largeness; ++i) {
    budgets.push_back(settings.budget *
                      (1.0 - settings.budget_spread * UnitUniform(rng())));
    std::vector<double> w(m);
    double total = 0.0;
    for (double& x : w) {
      x = settings.weight_low +
          (settings.weight_high - settings.weight_low) * UnitUniform(rng());
      total += x;
    }
    FisherSettings::Family family = settings.family;
    if (family == FisherSettings::Family::kMixed) {
      constexpr FisherSettings::Family kCycle[] = {
          FisherSettings::Family::kLinear, FisherSettings::Family::kCobbDouglas,
          FisherSettings::Family::kCes};
      family = kCycle[i % 3];
    }
    absl::StatusOr<FisherUtility> u;
    switch (family) {
      case FisherSettings::Family::kLinear:
        u = FisherUtility::Linear(w);
        break;
      case FisherSettings::Family::kCobbDouglas:
        for (double& x : w) x /= total;
        u = FisherUtility::CobbDouglas(w);
        break;
      default:
        u = FisherUtility::Ces(w, settings.rho);
        break;
    }
    if (!u.ok()) return u.status();
    utilities.push_back(*std::move(u));
  }
  auto instance = FisherInstance::Create(std::move(budgets), std::move(utilities));
  if (!instance.ok()) return instance.status();
  auto scaled = ConsistentlyScaled(*instance);
  if (!scaled.ok()) return scaled.status();
  if (settings.reserve_fraction && *settings.reserve_fraction > 0.0) {
    auto eq = SolveEisenbergGale(scaled->budgets, scaled->utilities);
    if (!eq.ok()) return eq.status();
    scaled->reserves.clear();
    for (double p : eq->prices) {
      scaled->reserves.push_back(*settings.reserve_fraction * p);
    }
  }
  return scaled;
}

}  // namespace bigmarket::harness
