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

#ifndef BIGMARKET_TOOLS_HARNESS_GENERATORS_H_
#define BIGMARKET_TOOLS_HARNESS_GENERATORS_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "bigmarket/fisher_market.h"
#include "bigmarket/multiplicity.h"
#include "bigmarket/walrasian.h"
#include "harness/config.h"

namespace bigmarket::harness {

// Uniform double in [0, 1) from the top 53 bits.
double UnitUniform(uint64_t bits);

struct GeneratedAuction {
  AuctionInstance instance;
  MultiplicityDistribution distribution;
};

// N bidders with unit-demand (cap 1) or k-demand valuations whose item
// weights come from `values`, seeded by (seed, N).
absl::StatusOr<GeneratedAuction> GenerateAuction(
    int goods, int demand_cap, const ValueModel& values,
    const MultiplicityModel& multiplicity, int num_bidders, uint64_t seed);

// One buyer per unit of `largeness`, consistently scaled, with reserves set
// to reserve_fraction·p* when requested.
absl::StatusOr<FisherInstance> GenerateFisher(const FisherSettings& settings,
                                              int largeness, uint64_t seed);

}  // namespace bigmarket::harness

#endif  // BIGMARKET_TOOLS_HARNESS_GENERATORS_H_
