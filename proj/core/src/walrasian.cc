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

#include "bigmarket/walrasian.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/strip.h"
#include "bigmarket/flow.h"

namespace bigmarket {
namespace {

absl::Status CheckProfile(const BidProfile& bids, std::span<const int> n) {
  for (int c : n) {
    if (c < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative multiplicity in ", FormatBundle(n)));
    }
  }
  for (size_t i = 0; i < bids.size(); ++i) {
    if (bids[i].num_goods() != static_cast<int>(n.size())) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "bid %d covers %d goods but the multiplicity vector has %d", i,
          bids[i].num_goods(), n.size()));
    }
  }
  return absl::OkStatus();
}

bool AllMatroid(const BidProfile& bids, int from) {
  for (size_t i = from; i < bids.size(); ++i) {
    if (!bids[i].is_matroid_rank()) return false;
  }
  return true;
}

double Tolerance(double scale) {
  return kValueTolerance * std::max(1.0, std::abs(scale));
}

// Single-good matroid profiles: every bidder contributes cap copies of its
// weight; the optimum takes the n largest. Order is (weight desc, index asc),
// which also realizes the canonical tie-break.
std::vector<int> SingleGoodOrder(const BidProfile& bids, int from) {
  std::vector<int> order(bids.size() - from);
  std::iota(order.begin(), order.end(), from);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return bids[a].weights()[0] > bids[b].weights()[0];
  });
  return order;
}

WelfareResult SingleGoodWelfare(const BidProfile& bids, int from, int copies) {
  WelfareResult result;
  result.allocation.assign(bids.size() - from, Bundle(1, 0));
  int remaining = copies;
  for (int i : SingleGoodOrder(bids, from)) {
    if (remaining == 0) break;
    if (bids[i].weights()[0] <= 0.0) continue;
    const int take = std::min(remaining, bids[i].cap());
    result.allocation[i - from][0] = take;
    result.welfare += take * bids[i].weights()[0];
    remaining -= take;
  }
  // Copies nobody values go to zero-weight bidders in index order.
  for (int i = from; i < static_cast<int>(bids.size()) && remaining > 0; ++i) {
    if (bids[i].weights()[0] > 0.0) continue;
    const int take = std::min(remaining, bids[i].cap());
    result.allocation[i - from][0] = take;
    remaining -= take;
  }
  return result;
}

// Transportation problem: source -> bidder (cap) -> good (weight) -> sink
// (multiplicity). Returns the welfare and a (not canonical) optimal
// allocation for bidders [from, N).
WelfareResult FlowWelfare(const BidProfile& bids, int from,
                          std::span<const int> n) {
  const int num_bidders = static_cast<int>(bids.size()) - from;
  const int m = static_cast<int>(n.size());
  const int source = 0;
  const int sink = 1 + num_bidders + m;
  MinCostFlow flow(sink + 1);
  std::vector<std::vector<int>> arc(num_bidders, std::vector<int>(m, -1));
  for (int b = 0; b < num_bidders; ++b) {
    const AuctionValuation& v = bids[from + b];
    flow.AddArc(source, 1 + b, v.cap(), 0.0);
    for (int j = 0; j < m; ++j) {
      if (v.weights()[j] > 0.0 && n[j] > 0) {
        arc[b][j] = flow.AddArc(1 + b, 1 + num_bidders + j,
                                std::min(v.cap(), n[j]), -v.weights()[j]);
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    if (n[j] > 0) flow.AddArc(1 + num_bidders + j, sink, n[j], 0.0);
  }
  flow.MinimizeCost(source, sink);
  WelfareResult result;
  result.allocation.assign(num_bidders, Bundle(m, 0));
  for (int b = 0; b < num_bidders; ++b) {
    for (int j = 0; j < m; ++j) {
      if (arc[b][j] >= 0) {
        result.allocation[b][j] = static_cast<int>(flow.Flow(arc[b][j]));
      }
    }
    result.welfare += bids[from + b].ValueOf(result.allocation[b]);
  }
  return result;
}

// Exact dynamic program over (bidder, remaining supply) for profiles that
// contain explicit bids.
class ExhaustiveSolver {
 public:
  static absl::StatusOr<ExhaustiveSolver> Create(const BidProfile& bids,
                                                 std::span<const int> n) {
    ExhaustiveSolver solver(bids, n);
    double states = static_cast<double>(bids.size());
    for (int c : n) states *= c + 1;
    double work = 0.0;
    for (const auto& c : solver.candidates_) work += states * c.size();
    if (work > kMaxExhaustiveStates) {
      return absl::ResourceExhaustedError(absl::StrFormat(
          "exhaustive welfare search would visit %.3g bundle combinations "
          "(limit %.3g); reduce bidders, goods or multiplicities",
          work, kMaxExhaustiveStates));
    }
    solver.memo_.assign(bids.size(),
                        std::vector<double>(static_cast<size_t>(states /
                                                                bids.size()),
                                            kUnknown));
    return solver;
  }

  // Best welfare of bidders [i, N) from supply `rest`.
  double Best(int i, const Bundle& rest) {
    if (i == static_cast<int>(bids_.size())) return 0.0;
    double& slot = memo_[i][Encode(rest)];
    if (!std::isnan(slot)) return slot;
    double best = 0.0;
    Bundle next(rest.size());
    for (const Bundle& x : candidates_[i]) {
      if (!Dominated(x, rest)) continue;
      for (size_t j = 0; j < rest.size(); ++j) next[j] = rest[j] - x[j];
      best = std::max(best, bids_[i].ValueOf(x) + Best(i + 1, next));
    }
    slot = best;
    return best;
  }

  WelfareResult Canonical() {
    WelfareResult result;
    Bundle rest(n_.begin(), n_.end());
    result.welfare = Best(0, rest);
    Bundle next(rest.size());
    for (size_t i = 0; i < bids_.size(); ++i) {
      const double target = Best(static_cast<int>(i), rest);
      const double tol = Tolerance(target);
      // Candidates are ascending; scan from the lexicographically largest.
      for (auto it = candidates_[i].rbegin(); it != candidates_[i].rend();
           ++it) {
        if (!Dominated(*it, rest)) continue;
        for (size_t j = 0; j < rest.size(); ++j) next[j] = rest[j] - (*it)[j];
        if (bids_[i].ValueOf(*it) + Best(static_cast<int>(i) + 1, next) >=
            target - tol) {
          result.allocation.push_back(*it);
          rest = next;
          break;
        }
      }
    }
    return result;
  }

 private:
  static constexpr double kUnknown = std::numeric_limits<double>::quiet_NaN();

  ExhaustiveSolver(const BidProfile& bids, std::span<const int> n)
      : bids_(bids), n_(n.begin(), n.end()) {
    for (const AuctionValuation& v : bids) {
      candidates_.push_back(
          EnumerateBundles(static_cast<int>(n.size()), v.cap(), n));
    }
  }

  size_t Encode(const Bundle& rest) const {
    size_t code = 0;
    for (size_t j = 0; j < rest.size(); ++j) code = code * (n_[j] + 1) + rest[j];
    return code;
  }

  const BidProfile& bids_;
  Bundle n_;
  std::vector<std::vector<Bundle>> candidates_;
  std::vector<std::vector<double>> memo_;
};

// Optimal welfare of bidders [from, N), matroid-rank bids only.
double MatroidSuffixWelfare(const BidProfile& bids, int from,
                            std::span<const int> n) {
  if (from == static_cast<int>(bids.size())) return 0.0;
  if (n.size() == 1) return SingleGoodWelfare(bids, from, n[0]).welfare;
  return FlowWelfare(bids, from, n).welfare;
}

double SnapPrice(double difference, double scale) {
  if (difference <= 1e-12 * std::max(1.0, std::abs(scale))) return 0.0;
  return difference;
}

}  // namespace

absl::StatusOr<AuctionInstance> AuctionInstance::Create(
    int num_goods, Multiplicity multiplicity,
    std::vector<AuctionValuation> valuations, int demand_cap) {
  if (num_goods < 1) {
    return absl::InvalidArgumentError("an auction needs at least one good");
  }
  if (static_cast<int>(multiplicity.size()) != num_goods) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "multiplicity vector has %d entries for %d goods",
        multiplicity.size(), num_goods));
  }
  if (valuations.empty()) {
    return absl::InvalidArgumentError("an auction needs at least one bidder");
  }
  if (demand_cap < 1) {
    return absl::InvalidArgumentError("demand cap must be at least 1");
  }
  if (auto s = CheckProfile(valuations, multiplicity); !s.ok()) return s;
  for (size_t i = 0; i < valuations.size(); ++i) {
    if (valuations[i].cap() > demand_cap) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "bidder %d demands up to %d items, above the instance cap %d", i,
          valuations[i].cap(), demand_cap));
    }
  }
  AuctionInstance instance;
  instance.num_goods = num_goods;
  instance.multiplicity = std::move(multiplicity);
  instance.valuations = std::move(valuations);
  instance.demand_cap = demand_cap;
  return instance;
}

absl::StatusOr<PricingRule> PricingRule::Mix(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mix weight must lie in [0, 1], got ", lambda));
  }
  return PricingRule(Kind::kMix, lambda);
}

absl::StatusOr<PricingRule> PricingRule::Parse(const std::string& name) {
  const std::string lower = absl::AsciiStrToLower(name);
  if (lower == "english") return English();
  if (lower == "dutch") return Dutch();
  absl::string_view rest = lower;
  if (absl::ConsumePrefix(&rest, "mix(") && absl::ConsumeSuffix(&rest, ")")) {
    double lambda = 0.0;
    if (absl::SimpleAtod(rest, &lambda)) return Mix(lambda);
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown pricing rule '", name,
      "'; expected english, dutch or mix(<lambda>)"));
}

std::string PricingRule::Name() const {
  switch (kind_) {
    case Kind::kEnglish:
      return "english";
    case Kind::kDutch:
      return "dutch";
    case Kind::kMix:
      return absl::StrCat("mix(", lambda_, ")");
  }
  return "";
}

absl::StatusOr<double> OptimalWelfare(const BidProfile& bids,
                                      std::span<const int> n) {
  if (auto s = CheckProfile(bids, n); !s.ok()) return s;
  if (AllMatroid(bids, 0)) return MatroidSuffixWelfare(bids, 0, n);
  auto solver = ExhaustiveSolver::Create(bids, n);
  if (!solver.ok()) return solver.status();
  return solver->Best(0, Bundle(n.begin(), n.end()));
}

absl::StatusOr<WelfareResult> WelfareOpt(const BidProfile& bids,
                                         std::span<const int> n) {
  if (auto s = CheckProfile(bids, n); !s.ok()) return s;
  if (!AllMatroid(bids, 0)) {
    auto solver = ExhaustiveSolver::Create(bids, n);
    if (!solver.ok()) return solver.status();
    return solver->Canonical();
  }
  const int m = static_cast<int>(n.size());
  if (m == 1) return SingleGoodWelfare(bids, 0, n[0]);
  WelfareResult result;
  Bundle rest(n.begin(), n.end());
  result.welfare = MatroidSuffixWelfare(bids, 0, rest);
  Bundle next(m);
  for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
    const double target = MatroidSuffixWelfare(bids, i, rest);
    const double tol = Tolerance(target);
    const std::vector<Bundle> candidates =
        EnumerateBundles(m, bids[i].cap(), rest);
    bool placed = false;
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      for (int j = 0; j < m; ++j) next[j] = rest[j] - (*it)[j];
      if (bids[i].ValueOf(*it) + MatroidSuffixWelfare(bids, i + 1, next) >=
          target - tol) {
        result.allocation.push_back(*it);
        rest = next;
        placed = true;
        break;
      }
    }
    if (!placed) {
      return absl::InternalError(
          absl::StrCat("no optimal bundle found for bidder ", i));
    }
  }
  return result;
}

absl::StatusOr<PriceVector> EnglishPrices(const BidProfile& bids,
                                          std::span<const int> n) {
  auto base = OptimalWelfare(bids, n);
  if (!base.ok()) return base.status();
  PriceVector p(n.size(), 0.0);
  Bundle more(n.begin(), n.end());
  for (size_t j = 0; j < n.size(); ++j) {
    ++more[j];
    auto w = OptimalWelfare(bids, more);
    if (!w.ok()) return w.status();
    --more[j];
    p[j] = SnapPrice(*w - *base, *base);
  }
  return p;
}

absl::StatusOr<PriceVector> DutchPrices(const BidProfile& bids,
                                        std::span<const int> n) {
  auto base = OptimalWelfare(bids, n);
  if (!base.ok()) return base.status();
  PriceVector p(n.size(), 0.0);
  Bundle fewer(n.begin(), n.end());
  for (size_t j = 0; j < n.size(); ++j) {
    if (n[j] == 0) {
      p[j] = kInfinitePrice;
      continue;
    }
    --fewer[j];
    auto w = OptimalWelfare(bids, fewer);
    if (!w.ok()) return w.status();
    ++fewer[j];
    p[j] = SnapPrice(*base - *w, *base);
  }
  return p;
}

PriceVector MixPrices(std::span<const double> english,
                      std::span<const double> dutch, double lambda) {
  PriceVector p(english.size());
  for (size_t j = 0; j < english.size(); ++j) {
    p[j] = std::isinf(dutch[j])
               ? english[j]
               : (1.0 - lambda) * english[j] + lambda * dutch[j];
  }
  return p;
}

WalrasianVerdict ValidateWalrasian(const BidProfile& bids,
                                   std::span<const int> n,
                                   const WalrasianOutcome& outcome) {
  WalrasianVerdict verdict;
  auto fail = [&verdict](std::string message) {
    verdict.valid = false;
    verdict.violations.push_back(std::move(message));
  };
  const int m = static_cast<int>(n.size());
  if (outcome.allocation.size() != bids.size() ||
      static_cast<int>(outcome.prices.size()) != m) {
    fail("outcome shape does not match the bid profile");
    return verdict;
  }
  for (int j = 0; j < m; ++j) {
    int allocated = 0;
    for (const Bundle& x : outcome.allocation) allocated += x[j];
    if (allocated > n[j]) {
      fail(absl::StrFormat("good %d over-allocated: %d copies for supply %d",
                           j, allocated, n[j]));
    } else if (outcome.prices[j] > kValueTolerance && allocated < n[j]) {
      fail(absl::StrFormat(
          "good %d priced at %.12g but only %d of %d copies allocated", j,
          outcome.prices[j], allocated, n[j]));
    }
  }
  for (size_t i = 0; i < bids.size(); ++i) {
    const double held =
        QuasiLinearUtility(bids[i], outcome.allocation[i], outcome.prices);
    auto best = IndirectUtility(bids[i], outcome.prices);
    if (!best.ok()) {
      fail(absl::StrCat("bidder ", i, ": ", best.status().message()));
      continue;
    }
    if (held < *best - Tolerance(*best)) {
      fail(absl::StrFormat(
          "bidder %d holds %s with utility %.12g but could get %.12g", i,
          FormatBundle(outcome.allocation[i]), held, *best));
    }
  }
  return verdict;
}

namespace {

// Replaces the infinite Dutch price of an unsupplied good with the largest
// value any bidder attaches to it. Nobody demands the good at that price, so
// the vector stays Walrasian and its mix with English prices does too.
PriceVector CapUnsuppliedPrices(const BidProfile& bids, PriceVector dutch) {
  for (size_t j = 0; j < dutch.size(); ++j) {
    if (!std::isinf(dutch[j])) continue;
    double ceiling = 0.0;
    for (const AuctionValuation& v : bids) {
      if (v.is_matroid_rank()) {
        ceiling = std::max(ceiling, v.weights()[j]);
        continue;
      }
      for (const XorAtom& atom : v.atoms()) {
        if (atom.bundle[j] > 0) ceiling = std::max(ceiling, atom.value);
      }
    }
    dutch[j] = ceiling;
  }
  return dutch;
}

}  // namespace

absl::StatusOr<WalrasianOutcome> RunMechanism(const BidProfile& bids,
                                              std::span<const int> n,
                                              const PricingRule& rule,
                                              bool validate) {
  WalrasianOutcome outcome;
  outcome.rule = rule;
  PriceVector english, dutch;
  if (rule.kind() != PricingRule::Kind::kDutch) {
    auto p = EnglishPrices(bids, n);
    if (!p.ok()) return p.status();
    english = *std::move(p);
  }
  if (rule.kind() != PricingRule::Kind::kEnglish) {
    auto p = DutchPrices(bids, n);
    if (!p.ok()) return p.status();
    dutch = *std::move(p);
  }
  switch (rule.kind()) {
    case PricingRule::Kind::kEnglish:
      outcome.prices = english;
      break;
    case PricingRule::Kind::kDutch:
      outcome.prices = dutch;
      break;
    case PricingRule::Kind::kMix:
      outcome.prices =
          MixPrices(english, CapUnsuppliedPrices(bids, dutch), rule.lambda());
      break;
  }
  auto opt = WelfareOpt(bids, n);
  if (!opt.ok()) return opt.status();
  outcome.allocation = std::move(opt->allocation);
  outcome.welfare_under_bids = opt->welfare;
  if (validate && AllMatroid(bids, 0)) {
    WalrasianVerdict verdict = ValidateWalrasian(bids, n, outcome);
    if (!verdict.valid) {
      return absl::InternalError(absl::StrCat(
          "mechanism output is not Walrasian under gross-substitutes bids: ",
          verdict.violations.front()));
    }
  }
  return outcome;
}

double DistU(std::span<const double> p, std::span<const double> q,
             double cap) {
  double total = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    total += std::abs(std::min(p[j], cap) - std::min(q[j], cap));
  }
  return total;
}

double SocialWelfare(std::span<const AuctionValuation> valuations,
                     const Allocation& allocation) {
  double total = 0.0;
  for (size_t i = 0; i < valuations.size(); ++i) {
    total += valuations[i].ValueOf(allocation[i]);
  }
  return total;
}

BidProfile WithoutBidder(const BidProfile& bids, int i) {
  BidProfile out;
  out.reserve(bids.size() - 1);
  for (int b = 0; b < static_cast<int>(bids.size()); ++b) {
    if (b != i) out.push_back(bids[b]);
  }
  return out;
}

}  // namespace bigmarket
