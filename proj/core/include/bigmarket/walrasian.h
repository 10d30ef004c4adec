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

#ifndef BIGMARKET_WALRASIAN_H_
#define BIGMARKET_WALRASIAN_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/types.h"
#include "bigmarket/valuation.h"

namespace bigmarket {

// Declared bid functions, one per bidder.
using BidProfile = std::vector<AuctionValuation>;
using Allocation = std::vector<Bundle>;

// An auction: m goods, a default multiplicity vector, the bidders' true
// valuations and the common demand cap k.
struct AuctionInstance {
  int num_goods = 0;
  Multiplicity multiplicity;
  std::vector<AuctionValuation> valuations;
  int demand_cap = 1;

  int num_bidders() const { return static_cast<int>(valuations.size()); }

  static absl::StatusOr<AuctionInstance> Create(
      int num_goods, Multiplicity multiplicity,
      std::vector<AuctionValuation> valuations, int demand_cap);
};

class PricingRule {
 public:
  enum class Kind { kEnglish, kDutch, kMix };

  static PricingRule English() { return PricingRule(Kind::kEnglish, 0.0); }
  static PricingRule Dutch() { return PricingRule(Kind::kDutch, 1.0); }
  // (1 - lambda)·English + lambda·Dutch; lambda in [0, 1].
  static absl::StatusOr<PricingRule> Mix(double lambda);
  static absl::StatusOr<PricingRule> Parse(const std::string& name);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  std::string Name() const;

 private:
  PricingRule(Kind kind, double lambda) : kind_(kind), lambda_(lambda) {}
  Kind kind_;
  double lambda_;
};

struct WelfareResult {
  double welfare = 0.0;
  Allocation allocation;
};

// Largest number of bundle combinations the exhaustive path will visit.
inline constexpr double kMaxExhaustiveStates = 2e7;

// Maximum of Σ_i b_i(x_i) subject to Σ_i x_ij ≤ n_j, value only. Matroid-rank
// profiles are solved by min-cost flow; profiles with an explicit bid by
// exhaustive search.
absl::StatusOr<double> OptimalWelfare(const BidProfile& bids,
                                      std::span<const int> n);

// Optimal welfare and the canonical optimal allocation: bidder 0 receives the
// lexicographically largest bundle (with at most cap() items) compatible with
// optimality, then bidder 1, and so on.
absl::StatusOr<WelfareResult> WelfareOpt(const BidProfile& bids,
                                         std::span<const int> n);

// p_j = W(n_j + 1, n_-j) - W(n).
absl::StatusOr<PriceVector> EnglishPrices(const BidProfile& bids,
                                          std::span<const int> n);

// p_j = W(n) - W(n_j - 1, n_-j), or kInfinitePrice when n_j = 0.
absl::StatusOr<PriceVector> DutchPrices(const BidProfile& bids,
                                        std::span<const int> n);

// Mixes English and Dutch prices; infinite Dutch components fall back to the
// English price. RunMechanism first caps those components at the largest bid
// value for the good, since the fallback alone can leave a bidder outside
// its demand set.
PriceVector MixPrices(std::span<const double> english,
                      std::span<const double> dutch, double lambda);

struct WalrasianOutcome {
  PriceVector prices;
  Allocation allocation;
  double welfare_under_bids = 0.0;
  PricingRule rule = PricingRule::English();
};

struct WalrasianVerdict {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks market clearing (Σ_i x_ij ≤ n_j, with equality where p_j > 0) and
// per-bidder optimality against the demand oracle, both to kValueTolerance.
WalrasianVerdict ValidateWalrasian(const BidProfile& bids,
                                   std::span<const int> n,
                                   const WalrasianOutcome& outcome);

// Prices by `rule`, allocation from WelfareOpt. When `validate` is set and
// every bid is of a matroid-rank family the outcome is validated and a
// failure is reported as an internal error.
absl::StatusOr<WalrasianOutcome> RunMechanism(const BidProfile& bids,
                                              std::span<const int> n,
                                              const PricingRule& rule,
                                              bool validate = true);

// Σ_j |min(p_j, U) - min(q_j, U)|.
double DistU(std::span<const double> p, std::span<const double> q, double cap);

// Σ_i v_i(x_i) under the given valuations.
double SocialWelfare(std::span<const AuctionValuation> valuations,
                     const Allocation& allocation);

// Bids with bidder `i` removed.
BidProfile WithoutBidder(const BidProfile& bids, int i);

}  // namespace bigmarket

#endif  // BIGMARKET_WALRASIAN_H_
