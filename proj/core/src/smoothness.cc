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

#include <algorithm>
#include <optional>

#include "absl/status/status.h"

namespace bigmarket {
namespace {

BidProfile WithBid(const BidProfile& bids, int i, const AuctionValuation& v) {
  BidProfile out = bids;
  out[i] = v;
  return out;
}

absl::StatusOr<bool> Precondition(std::span<const int> n, int i,
                                  const BidProfile& bids,
                                  const SmoothnessParams& params,
                                  PriceOracle* oracle) {
  if (i < 0 || i >= static_cast<int>(bids.size())) {
    return absl::InvalidArgumentError("bidder index out of range");
  }
  std::optional<PriceOracle> local;
  if (oracle == nullptr) {
    local.emplace(bids);
    oracle = &*local;
  }
  return GoodForAllGoods(*oracle, n, params);
}

}  // namespace

absl::StatusOr<bool> GoodForAllGoods(PriceOracle& oracle,
                                     std::span<const int> n,
                                     const SmoothnessParams& params) {
  for (int c : n) {
    if (c <= params.k + 1) return false;
  }
  BadnessParams badness{params.epsilon, params.cap_u, params.k + 1, 0};
  for (int j = 0; j < static_cast<int>(n.size()); ++j) {
    auto bad = IsKEpsBad(oracle, n, j, badness);
    if (!bad.ok()) return bad.status();
    if (*bad) return false;
  }
  return true;
}

absl::StatusOr<PriceBracketVerdict> VerifyPriceBracket(
    std::span<const AuctionValuation> truth, const BidProfile& bids,
    std::span<const int> n, int i, const PricingRule& rule,
    const SmoothnessParams& params, PriceOracle* oracle) {
  auto good = Precondition(n, i, bids, params, oracle);
  if (!good.ok()) return good.status();
  PriceBracketVerdict verdict;
  verdict.precondition = *good;

  auto with_bids = RunMechanism(bids, n, rule);
  if (!with_bids.ok()) return with_bids.status();
  auto without = EnglishPrices(WithoutBidder(bids, i), n);
  if (!without.ok()) return without.status();
  const int m = static_cast<int>(n.size());
  for (int j = 0; j < m; ++j) {
    if ((*without)[j] > with_bids->prices[j] + kValueTolerance) {
      verdict.lower_holds = false;
      verdict.violating_good = j;
    }
  }
  if (!verdict.precondition) return verdict;

  auto truthful = RunMechanism(WithBid(bids, i, truth[i]), n, rule);
  if (!truthful.ok()) return truthful.status();
  verdict.worst_slack = kInfinitePrice;
  for (int j = 0; j < m; ++j) {
    const double left = std::min(truthful->prices[j], params.cap_u);
    const double right = std::min(with_bids->prices[j], params.cap_u) +
                         (params.k + 1) * params.epsilon;
    verdict.worst_slack = std::min(verdict.worst_slack, right - left);
    if (left > right + kValueTolerance) {
      verdict.upper_holds = false;
      verdict.violating_good = j;
    }
  }
  return verdict;
}

absl::StatusOr<SmoothVerdict> VerifySmoothInequality(
    std::span<const AuctionValuation> truth, const BidProfile& bids,
    std::span<const int> n, int i, const PricingRule& rule,
    const SmoothnessParams& params, PriceOracle* oracle) {
  auto good = Precondition(n, i, bids, params, oracle);
  if (!good.ok()) return good.status();
  SmoothVerdict verdict;
  verdict.precondition = *good;
  if (!verdict.precondition) return verdict;

  const BidProfile truthful_profile(truth.begin(), truth.end());
  auto optimum = WelfareOpt(truthful_profile, n);
  if (!optimum.ok()) return optimum.status();
  const Bundle& x_opt = optimum->allocation[i];
  auto d = MinimalBundle(truth[i], x_opt);
  if (!d.ok()) return d.status();

  auto with_bids = RunMechanism(bids, n, rule);
  if (!with_bids.ok()) return with_bids.status();
  auto deviation = RunMechanism(WithBid(bids, i, truth[i]), n, rule);
  if (!deviation.ok()) return deviation.status();

  verdict.lhs = QuasiLinearUtility(truth[i], deviation->allocation[i],
                                   deviation->prices);
  verdict.rhs = truth[i].ValueOf(x_opt) - Payment(x_opt, with_bids->prices) -
                BundleSize(*d) * (params.k + 1) * params.epsilon;
  verdict.holds = verdict.lhs >= verdict.rhs - kValueTolerance;
  return verdict;
}

}  // namespace bigmarket
