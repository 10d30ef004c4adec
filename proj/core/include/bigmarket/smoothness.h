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

#ifndef BIGMARKET_SMOOTHNESS_H_
#define BIGMARKET_SMOOTHNESS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/badness.h"
#include "bigmarket/walrasian.h"

namespace bigmarket {

// Parameters of the per-draw price and utility inequalities. `k` is the
// demand cap; goodness is tested at depth k + 1.
struct SmoothnessParams {
  double epsilon = 1.0;
  double cap_u = 1.0;
  int k = 1;
};

// True when every n_j > k + 1 and n is (k + 1, ε, U)-good for every good
// under the English prices of `oracle`'s profile.
absl::StatusOr<bool> GoodForAllGoods(PriceOracle& oracle,
                                     std::span<const int> n,
                                     const SmoothnessParams& params);

struct PriceBracketVerdict {
  // Eng(n; b_-i) ≼ p(n; b), checked on every draw.
  bool lower_holds = true;
  bool precondition = false;
  // min(p_j(n; v_i, b_-i), U) ≤ min(p_j(n; b), U) + (k + 1)ε for all j;
  // meaningful only when the precondition holds.
  bool upper_holds = true;
  int violating_good = -1;
  double worst_slack = 0.0;  // smallest right-minus-left over goods
};

// Compares prices when bidder i reports truthfully against prices under the
// full profile `bids`, and the English prices without bidder i.
absl::StatusOr<PriceBracketVerdict> VerifyPriceBracket(
    std::span<const AuctionValuation> truth, const BidProfile& bids,
    std::span<const int> n, int i, const PricingRule& rule,
    const SmoothnessParams& params, PriceOracle* oracle = nullptr);

struct SmoothVerdict {
  bool precondition = false;
  bool holds = true;
  double lhs = 0.0;  // u_i(v_i, b_-i)
  double rhs = 0.0;
};

// u_i(v_i, b_-i) ≥ v_i(x_i(v)) - Σ_{s ∈ x_i(v)} p_s(n; b) - |d_i|·(k + 1)ε
// where x_i(v) is i's bundle in the truthful outcome and d_i its minimal
// value-preserving sub-bundle. Evaluated only when the precondition holds.
absl::StatusOr<SmoothVerdict> VerifySmoothInequality(
    std::span<const AuctionValuation> truth, const BidProfile& bids,
    std::span<const int> n, int i, const PricingRule& rule,
    const SmoothnessParams& params, PriceOracle* oracle = nullptr);

}  // namespace bigmarket

#endif  // BIGMARKET_SMOOTHNESS_H_
