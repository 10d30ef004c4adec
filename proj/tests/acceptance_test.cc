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

// Acceptance suite: runs every criterion, prints one PASS/FAIL line each and
// exits nonzero if any criterion fails or overruns its time limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "bigmarket/auction_game.h"
#include "bigmarket/badness.h"
#include "bigmarket/fisher_game.h"
#include "bigmarket/fisher_market.h"
#include "bigmarket/multiplicity.h"
#include "bigmarket/regret.h"
#include "bigmarket/smoothness.h"
#include "bigmarket/walrasian.h"
#include "harness/config.h"
#include "harness/generators.h"
#include "harness/runner.h"
#include "oracles.h"

namespace bigmarket {
namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Counts failures and keeps the first message.
struct Tally {
  int checked = 0;
  int failed = 0;
  std::string first;
  void Check(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what;
  }
  Verdict Result(const std::string& extra = "") const {
    std::string detail = absl::StrFormat("%d checks, %d failed", checked,
                                         failed);
    if (!extra.empty()) detail += "; " + extra;
    if (failed > 0) detail += "; first: " + first;
    return {failed == 0, detail};
  }
};

Verdict Error(const absl::Status& status) {
  return {false, std::string(status.ToString())};
}

struct AuctionCase {
  BidProfile bids;
  Multiplicity n;
};

// The shared GS corpus for the validity and price-lattice criteria.
std::vector<AuctionCase> GsCorpus() {
  std::mt19937_64 rng(20260101);
  std::vector<AuctionCase> corpus;
  for (int t = 0; t < 500; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int bidders = std::uniform_int_distribution<int>(1, 5)(rng);
    const bool dyadic = t % 2 == 0;
    corpus.push_back({oracle::RandomMatroidProfile(rng, bidders, m, 2, dyadic),
                      oracle::RandomMultiplicity(rng, m, 0, 3)});
  }
  return corpus;
}

Verdict OracleEquivalence() {
  std::mt19937_64 rng(11);
  Tally tally;
  for (int t = 0; t < 250; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int bidders = std::uniform_int_distribution<int>(1, 4)(rng);
    const int k = std::uniform_int_distribution<int>(1, 2)(rng);
    const BidProfile bids =
        oracle::RandomMatroidProfile(rng, bidders, m, k, true);
    const Multiplicity n = oracle::RandomMultiplicity(rng, m, 0, 3);
    const auto welfare = OptimalWelfare(bids, n);
    if (!welfare.ok()) return Error(welfare.status());
    const double brute = oracle::BruteForceWelfare(bids, n);
    tally.Check(*welfare == brute,
                absl::StrFormat("instance %d: %.17g vs %.17g", t, *welfare,
                                brute));
  }
  return tally.Result();
}

const PricingRule kRules[] = {PricingRule::English(), PricingRule::Dutch(),
                              *PricingRule::Mix(0.5)};

Verdict WalrasianValidity() {
  Tally tally;
  int t = 0;
  for (const AuctionCase& c : GsCorpus()) {
    for (const PricingRule& rule : kRules) {
      const auto outcome = RunMechanism(c.bids, c.n, rule, false);
      if (!outcome.ok()) return Error(outcome.status());
      const WalrasianVerdict verdict = ValidateWalrasian(c.bids, c.n, *outcome);
      tally.Check(verdict.valid,
                  absl::StrFormat("instance %d %s: %s", t, rule.Name(),
                                  verdict.violations.empty()
                                      ? ""
                                      : verdict.violations.front()));
      const std::string brute = oracle::BruteForceWalrasianFailure(
          c.bids, c.n, outcome->prices, outcome->allocation);
      tally.Check(brute.empty(), absl::StrFormat("instance %d %s: %s", t,
                                                 rule.Name(), brute));
    }
    ++t;
  }
  return tally.Result();
}

bool Below(double a, double b) { return a <= b + kValueTolerance; }

Verdict PriceLattice() {
  Tally tally;
  int t = 0;
  for (const AuctionCase& c : GsCorpus()) {
    const auto english = EnglishPrices(c.bids, c.n);
    const auto dutch = DutchPrices(c.bids, c.n);
    if (!english.ok()) return Error(english.status());
    if (!dutch.ok()) return Error(dutch.status());
    for (size_t j = 0; j < c.n.size(); ++j) {
      tally.Check(Below((*english)[j], (*dutch)[j]),
                  absl::StrFormat("instance %d good %d: english above dutch",
                                  t, j));
      Multiplicity more = c.n;
      ++more[j];
      const auto english_more = EnglishPrices(c.bids, more);
      const auto dutch_more = DutchPrices(c.bids, more);
      if (!english_more.ok()) return Error(english_more.status());
      if (!dutch_more.ok()) return Error(dutch_more.status());
      for (size_t l = 0; l < c.n.size(); ++l) {
        tally.Check(Below((*english_more)[l], (*english)[l]),
                    absl::StrFormat("instance %d: english rises", t));
        tally.Check(Below((*dutch_more)[l], (*dutch)[l]),
                    absl::StrFormat("instance %d: dutch rises", t));
      }
    }
    ++t;
  }
  return tally.Result();
}

Verdict BadnessAndSmoothness() {
  std::mt19937_64 rng(41);
  Tally tally;
  // Slice counts for eps-bad and (k, eps)-bad vectors.
  for (int t = 0; t < 120; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 2)(rng);
    const int bidders = std::uniform_int_distribution<int>(2, 6)(rng);
    const int cap = std::uniform_int_distribution<int>(1, 2)(rng);
    PriceOracle prices(
        oracle::RandomMatroidProfile(rng, bidders, m, cap, t % 2 == 0));
    const Multiplicity n = oracle::RandomMultiplicity(rng, m, 0, 5);
    const int k = std::uniform_int_distribution<int>(0, 2)(rng);
    const BadnessParams params{oracle::Uniform(rng, 0.05, 0.5), 1.0, k,
                               DefaultSearchBox(bidders, cap, k)};
    for (int j = 0; j < m; ++j) {
      const auto counts = CountBadSlice(prices, n, j, params);
      if (!counts.ok()) {
        tally.Check(false, std::string(counts.status().message()));
        continue;
      }
      tally.Check(counts->eps_bad <= counts->eps_bound,
                  absl::StrFormat("slice %d: %d eps-bad > %g", t,
                                  counts->eps_bad, counts->eps_bound));
      tally.Check(counts->k_eps_bad <= counts->k_eps_bound,
                  absl::StrFormat("slice %d: %d k-eps-bad > %g", t,
                                  counts->k_eps_bad, counts->k_eps_bound));
    }
  }
  // Probability of a (k, eps)-bad draw, computed exactly.
  for (int t = 0; t < 100; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 2)(rng);
    const int bidders = std::uniform_int_distribution<int>(2, 8)(rng);
    PriceOracle prices(oracle::RandomMatroidProfile(rng, bidders, m, 1, false));
    const auto dist =
        MultiplicityDistribution::IndependentBinomial(m, bidders, 0.5);
    if (!dist.ok()) return Error(dist.status());
    const int k = std::uniform_int_distribution<int>(0, 2)(rng);
    const BadnessParams params{oracle::Uniform(rng, 0.1, 2.0), 1.0, k,
                               DefaultSearchBox(bidders, 1, k)};
    const auto report = BadEventProbability(prices, *dist, params);
    if (!report.ok()) return Error(report.status());
    tally.Check(report->exact && report->holds,
                absl::StrFormat("bad event %d: %g > %g", t,
                                report->probability, report->bound));
  }
  // Price bracket and smoothness under random deviations.
  int gated = 0;
  for (int t = 0; t < 150; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 2)(rng);
    const int bidders = std::uniform_int_distribution<int>(2, 4)(rng);
    const BidProfile truth =
        oracle::RandomMatroidProfile(rng, bidders, m, 1, false);
    BidProfile bids;
    for (const AuctionValuation& v : truth) {
      bids.push_back(
          v.Scaled(oracle::Uniform(rng, 0, 1.2), oracle::Uniform(rng, 0, 0.1)));
    }
    const SmoothnessParams params{oracle::Uniform(rng, 0.05, 0.6), 1.0,
                                  std::uniform_int_distribution<int>(0, 1)(rng)};
    const Multiplicity n = oracle::RandomMultiplicity(rng, m, 2, 6);
    const int i = std::uniform_int_distribution<int>(0, bidders - 1)(rng);
    const PricingRule& rule = kRules[t % 3];
    const auto bracket = VerifyPriceBracket(truth, bids, n, i, rule, params);
    const auto smooth = VerifySmoothInequality(truth, bids, n, i, rule, params);
    if (!bracket.ok()) return Error(bracket.status());
    if (!smooth.ok()) return Error(smooth.status());
    tally.Check(bracket->lower_holds,
                absl::StrFormat("deviation %d: lower price bound", t));
    if (!bracket->precondition) continue;
    ++gated;
    tally.Check(bracket->upper_holds,
                absl::StrFormat("deviation %d: upper price bound, slack %g", t,
                                bracket->worst_slack));
    tally.Check(smooth->holds,
                absl::StrFormat("deviation %d: smooth %g < %g", t, smooth->lhs,
                                smooth->rhs));
  }
  return tally.Result(absl::StrFormat("%d/150 deviations pass the gate",
                                      gated));
}

Verdict AuctionPoaAtDeskScale() {
  harness::ValueModel values;  // uniform [0.5, 1]
  harness::MultiplicityModel multiplicity;  // Binomial(N, 1/2)
  harness::AssumptionOverrides overrides;
  overrides.zeta = 1.0;
  const auto grid = StrategyGrid::FromGammas({0, 0.25, 0.5, 0.75, 1});
  if (!grid.ok()) return Error(grid.status());
  Tally tally;
  std::vector<double> worst;
  std::string ratios;
  for (int n : {8, 16, 32, 64}) {
    const auto auction = harness::GenerateAuction(1, 1, values, multiplicity,
                                                  n, 1);
    if (!auction.ok()) return Error(auction.status());
    auto game = AuctionGame::Create(auction->instance, auction->distribution,
                                    PricingRule::English(), {*grid});
    if (!game.ok()) return Error(game.status());
    const auto opt = game->ExpectedOptimalWelfare();
    if (!opt.ok()) return Error(opt.status());
    const harness::AssumptionAudit audit =
        harness::AuditAssumptions(*auction, values, overrides, *opt);
    const AuctionPoaBounds bounds = ComputeAuctionPoaBounds(
        1, 1, audit.max_point_mass, audit.constants.zeta, audit.rho);
    const double threshold =
        audit.all() ? std::max({0.0, bounds.sqrt_bound, bounds.log_bound})
                    : 0.0;
    EquilibriumSearchOptions options;
    options.seed = n;
    const auto search = SearchEquilibria(*game, options);
    if (!search.ok()) return Error(search.status());
    double w = 1.0;
    for (const EquilibriumReport& eq : search->equilibria) {
      if (eq.certification.kind != Certification::Kind::kExactNash) continue;
      w = std::min(w, eq.ratio);
      tally.Check(eq.ratio >= threshold,
                  absl::StrFormat("N=%d ratio %.6f below %.6f", n, eq.ratio,
                                  threshold));
    }
    tally.Check(search->worst >= 0, absl::StrFormat("N=%d: no equilibrium", n));
    worst.push_back(w);
    ratios += absl::StrFormat("%sN=%d worst=%.4f bound=%.4f", ratios.empty() ? "" : " ", n, w,
                              threshold);
  }
  const bool trend =
      worst.back() - worst.front() >= 0.02 ||
      (worst.front() > 0.95 && worst.back() > 0.95);
  tally.Check(trend, "no improvement from N=8 to N=64");
  return tally.Result(ratios);
}

Verdict Bullying() {
  const auto instance = AuctionInstance::Create(
      1, {1},
      {*AuctionValuation::UnitDemand({10.0}),
       *AuctionValuation::UnitDemand({1.0})},
      1);
  if (!instance.ok()) return Error(instance.status());
  const auto dist = MultiplicityDistribution::Deterministic({1});
  if (!dist.ok()) return Error(dist.status());
  // Bidder 0 may bid 0 or truth; bidder 1 may bid truth or 10.
  const auto low = StrategyGrid::FromGammas({0, 1});
  const auto high = StrategyGrid::FromGammas({1, 10});
  if (!low.ok() || !high.ok()) return {false, "bad grids"};
  auto game = AuctionGame::Create(*instance, *dist, PricingRule::English(),
                                  {*low, *high});
  if (!game.ok()) return Error(game.status());
  const auto report = MakeReport(*game, {0, 1});
  if (!report.ok()) return Error(report.status());
  Tally tally;
  tally.Check(report->certification.kind == Certification::Kind::kExactNash,
              report->certification.Label());
  tally.Check(report->ratio == 0.1,
              absl::StrFormat("ratio %.17g", report->ratio));
  return tally.Result(absl::StrFormat("%s ratio=%.17g",
                                      report->certification.Label(),
                                      report->ratio));
}

double MaxAllocationGap(const FisherAllocation& a,
                        const std::vector<std::vector<double>>& b) {
  double gap = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a[i].size(); ++j) {
      gap = std::max(gap, std::abs(a[i][j] - b[i][j]));
    }
  }
  return gap;
}

std::vector<double> Simplex(std::mt19937_64& rng, int m) {
  std::vector<double> w(m);
  double total = 0.0;
  for (double& x : w) total += (x = oracle::Uniform(rng, 0.1, 1.0));
  for (double& x : w) x /= total;
  return w;
}

Verdict FisherSolvers() {
  std::mt19937_64 rng(71);
  Tally tally;
  double worst_gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int buyers = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<double> e(buyers);
    std::vector<FisherUtility> u;
    for (int i = 0; i < buyers; ++i) {
      e[i] = oracle::Uniform(rng, 0.5, 2.0);
      u.push_back(*FisherUtility::CobbDouglas(Simplex(rng, m)));
    }
    const auto eq = SolveEisenbergGale(e, u);
    if (!eq.ok()) return Error(eq.status());
    const double gap =
        MaxAllocationGap(eq->allocation, oracle::GridEisenbergGale(e, u));
    worst_gap = std::max(worst_gap, gap);
    tally.Check(gap <= 1e-5,
                absl::StrFormat("cobb-douglas %d: gap %g", t, gap));
  }
  FisherSolverOptions options;
  options.max_iterations = 10000;
  int most_iterations = 0;
  for (int t = 0; t < 20; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    const int buyers = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<double> e(buyers);
    std::vector<FisherUtility> u;
    for (int i = 0; i < buyers; ++i) {
      e[i] = oracle::Uniform(rng, 0.5, 2.0);
      std::vector<double> w(m);
      for (double& x : w) x = oracle::Uniform(rng, 0.1, 1.0);
      u.push_back(*FisherUtility::Linear(w));
    }
    const auto eq = SolveEisenbergGale(e, u, options);
    if (!eq.ok()) {
      tally.Check(false, absl::StrFormat("linear %d: %s", t,
                                         eq.status().message()));
      continue;
    }
    most_iterations = std::max(most_iterations, eq->iterations);
    const FisherResiduals r = CheckFisherEquilibrium(e, u, {}, *eq);
    tally.Check(r.max_clearing <= 1e-6 && r.max_optimality_gap <= 1e-6 &&
                    eq->iterations <= 10000,
                absl::StrFormat("linear %d: |z| %g, gap %g, %d iterations", t,
                                r.max_clearing, r.max_optimality_gap,
                                eq->iterations));
  }
  return tally.Result(absl::StrFormat(
      "worst allocation gap %.2g, most iterations %d", worst_gap,
      most_iterations));
}

struct FisherCase {
  int largeness;
  int goods;
};

// Searches the report game of one generated instance and checks every
// certified equilibrium against `bound(m, L)`.
absl::Status CheckFisherPoa(const harness::FisherSettings& settings,
                            int largeness, uint64_t seed, bool sum_only,
                            double bound, Tally& tally, double& worst) {
  const auto instance = harness::GenerateFisher(settings, largeness, seed);
  if (!instance.ok()) return instance.status();
  std::vector<std::vector<FisherUtility>> grids;
  for (const FisherUtility& u : instance->utilities) {
    grids.push_back(ReportGrid(u, settings.report_shifts));
  }
  auto game = FisherGame::Create(*instance, std::move(grids));
  if (!game.ok()) return game.status();
  EquilibriumSearchOptions options;
  options.seed = seed;
  options.restarts = 8;
  const auto search = SearchFisherEquilibria(*game, options);
  if (!search.ok()) return search.status();
  tally.Check(!search->equilibria.empty(),
              absl::StrFormat("L=%d m=%d: no equilibrium", largeness,
                              settings.goods));
  for (const FisherEquilibriumReport& eq : search->equilibria) {
    if (!eq.certification.is_equilibrium()) continue;
    worst = std::min(worst, eq.ratio_sum);
    tally.Check(eq.ratio_sum >= bound,
                absl::StrFormat("L=%d m=%d: sum ratio %.6f < %.6f", largeness,
                                settings.goods, eq.ratio_sum, bound));
    if (sum_only) continue;
    worst = std::min(worst, eq.ratio_gm);
    tally.Check(eq.ratio_gm >= bound,
                absl::StrFormat("L=%d m=%d: gm ratio %.6f < %.6f", largeness,
                                settings.goods, eq.ratio_gm, bound));
  }
  return absl::OkStatus();
}

Verdict FisherPoa() {
  const FisherCase cases[] = {{4, 1}, {8, 1}, {16, 1}, {4, 2}, {8, 2},
                              {16, 2}, {4, 2}, {8, 2}, {4, 1}, {16, 2}};
  Tally tally;
  double worst = 1.0;
  uint64_t seed = 1;
  for (const FisherCase& c : cases) {
    harness::FisherSettings settings;
    settings.goods = c.goods;
    settings.family = harness::FisherSettings::Family::kMixed;
    settings.budget_spread = 0.5;
    const absl::Status status =
        CheckFisherPoa(settings, c.largeness, seed++, false,
                       FisherPoaBound(c.goods, c.largeness), tally, worst);
    if (!status.ok()) return Error(status);
  }
  return tally.Result(absl::StrFormat("worst ratio %.4f", worst));
}

Verdict PricePerturbation() {
  std::mt19937_64 rng(89);
  Tally tally;
  double slack = kInfinitePrice;
  for (int t = 0; t < 100; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int buyers = std::uniform_int_distribution<int>(2, 5)(rng);
    std::vector<double> e(buyers);
    std::vector<FisherUtility> u;
    for (int i = 0; i < buyers; ++i) {
      e[i] = oracle::Uniform(rng, 0.5, 2.0);
      const std::vector<double> w = Simplex(rng, m);
      u.push_back(t % 2 ? *FisherUtility::Linear(w)
                        : *FisherUtility::CobbDouglas(w));
    }
    const auto base = FisherInstance::Create(e, u);
    if (!base.ok()) return Error(base.status());
    const auto instance = ConsistentlyScaled(*base);
    if (!instance.ok()) return Error(instance.status());
    const int i = std::uniform_int_distribution<int>(0, buyers - 1)(rng);
    std::vector<FisherUtility> reports = instance->utilities;
    const auto grid = ReportGrid(reports[i]);
    reports[i] =
        grid[std::uniform_int_distribution<int>(0, grid.size() - 1)(rng)];
    const auto verdict = VerifyPricePerturbation(*instance, reports, i, 1e-8);
    if (!verdict.ok()) return Error(verdict.status());
    slack = std::min(slack, verdict->worst_slack);
    tally.Check(verdict->holds(),
                absl::StrFormat("trial %d: slack %g", t, verdict->worst_slack));
  }
  return tally.Result(absl::StrFormat("smallest slack %.3g", slack));
}

Verdict ReservePrices() {
  Tally tally;
  double worst = 1.0;
  const FisherCase cases[] = {{4, 1}, {8, 1}, {4, 2}, {8, 2}, {16, 2}};
  uint64_t seed = 101;
  for (const FisherCase& c : cases) {
    harness::FisherSettings settings;
    settings.goods = c.goods;
    settings.family = harness::FisherSettings::Family::kLinear;
    settings.reserve_fraction = 0.25;
    const absl::Status status = CheckFisherPoa(
        settings, c.largeness, seed++, true,
        FisherReservePoaBound(c.goods, c.largeness), tally, worst);
    if (!status.ok()) return Error(status);
  }
  std::mt19937_64 rng(103);
  for (int t = 0; t < 50; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<double> p_star(m), q(m);
    for (double& x : p_star) x = oracle::Uniform(rng, 0.1, 2.0);
    const double budget = std::accumulate(p_star.begin(), p_star.end(), 0.0);
    double total = 0.0;
    for (double& x : q) total += (x = oracle::Uniform(rng, 0.0, 1.0));
    for (double& x : q) x *= budget / total;
    const double l = oracle::Uniform(rng, 0.05, 1.0);
    const auto c = CompressPrices(q, p_star, l, budget);
    if (!c.ok()) return Error(c.status());
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      sum += c->prices[j];
      tally.Check(c->prices[j] >= l * p_star[j] * (1 - 1e-12) &&
                      c->prices[j] <= c->t * p_star[j] * (1 + 1e-12),
                  absl::StrFormat("q %d good %d outside the band", t, j));
    }
    tally.Check(std::abs(sum - budget) <= 1e-12 * budget * m,
                absl::StrFormat("q %d: sum %.17g vs %.17g", t, sum, budget));
  }
  return tally.Result(absl::StrFormat("worst sum ratio %.4f", worst));
}

Verdict RegretBounds() {
  Tally tally;
  double worst = 0.0;
  // Hedge against the auction game, one run per bidder count.
  harness::ValueModel values;
  harness::MultiplicityModel multiplicity;
  const auto grid = StrategyGrid::FromGammas({0, 0.25, 0.5, 0.75, 1});
  if (!grid.ok()) return Error(grid.status());
  for (int n : {4, 8, 16}) {
    const auto auction =
        harness::GenerateAuction(1, 1, values, multiplicity, n, 7);
    if (!auction.ok()) return Error(auction.status());
    auto game = AuctionGame::Create(auction->instance, auction->distribution,
                                    PricingRule::English(), {*grid});
    if (!game.ok()) return Error(game.status());
    RegretConfig config;
    config.rounds = 10000;
    config.seed = n;
    const auto run = RunNoRegret(*game, config);
    if (!run.ok()) return Error(run.status());
    const double budget = HedgeRegretBudget(grid->size(), config.rounds);
    for (size_t i = 0; i < run->regret.size(); ++i) {
      worst = std::max(worst, run->regret[i] / (budget * run->chi[i]));
      tally.Check(run->regret[i] <= budget * run->chi[i],
                  absl::StrFormat("N=%d bidder %d: regret %g > %g", n, i,
                                  run->regret[i], budget * run->chi[i]));
    }
  }
  // The welfare guarantees on the bundled regret scenarios.
  const auto config = harness::LoadConfig(BIGMARKET_BUNDLED_CONFIG);
  if (!config.ok()) return Error(config.status());
  for (const harness::Scenario& s : config->scenarios) {
    if (s.id != "walrasian_regret" && s.id != "fisher_reserve_regret") {
      continue;
    }
    const auto result = harness::RunScenario(s);
    if (!result.ok()) return Error(result.status());
    for (const harness::AssertionOutcome& a : result->assertions) {
      if (a.name.rfind("regret", 0) != 0) continue;
      tally.Check(a.checked > 0 && a.passed(),
                  absl::StrFormat("%s/%s: %s", s.id, a.name, a.first_failure));
    }
  }
  return tally.Result(
      absl::StrFormat("largest regret/budget %.3f", worst));
}

// C(a, b) in exact integers.
uint64_t Choose(int a, int b) {
  if (b < 0 || a < 0 || b > a) return b == 0 ? 1 : 0;
  std::vector<uint64_t> row(b + 1, 0);
  row[0] = 1;
  for (int r = 1; r <= a; ++r) {
    for (int c = std::min(r, b); c >= 1; --c) row[c] += row[c - 1];
  }
  return row[b];
}

Verdict BinomialIdentities() {
  Tally tally;
  for (int m = 1; m <= 6; ++m) {
    for (int k = 0; k <= 6; ++k) {
      tally.Check(BinomialIdentitiesHold(m, k),
                  absl::StrFormat("library, m=%d k=%d", m, k));
      uint64_t left = 0, right = 0;
      bool partial_ok = true;
      for (int n = 0; n <= k; ++n) {
        uint64_t partial = 0;
        for (int i = 0; i <= n; ++i) partial += Choose(m + i - 2, i);
        partial_ok = partial_ok && Choose(m + n - 1, n) == partial;
        left += Choose(m + n - 1, n);
        right += (k - n + 1) * Choose(m + n - 2, n);
      }
      tally.Check(partial_ok && left == right,
                  absl::StrFormat("integer oracle, m=%d k=%d", m, k));
    }
  }
  return tally.Result();
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace bigmarket

int main() {
  using bigmarket::Criterion;
  const Criterion criteria[] = {
      {"oracle_equivalence", 60, bigmarket::OracleEquivalence},
      {"walrasian_validity", 120, bigmarket::WalrasianValidity},
      {"price_lattice", 120, bigmarket::PriceLattice},
      {"badness_and_smoothness", 600, bigmarket::BadnessAndSmoothness},
      {"auction_poa_desk_scale", 1800, bigmarket::AuctionPoaAtDeskScale},
      {"bullying_counterexample", 1, bigmarket::Bullying},
      {"fisher_solvers", 120, bigmarket::FisherSolvers},
      {"fisher_poa", 900, bigmarket::FisherPoa},
      {"price_perturbation", 120, bigmarket::PricePerturbation},
      {"reserve_prices", 600, bigmarket::ReservePrices},
      {"regret_bounds", 1200, bigmarket::RegretBounds},
      {"binomial_identities", 1, bigmarket::BinomialIdentities},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    bigmarket::Verdict verdict = c.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.limit_seconds) {
      verdict.pass = false;
      verdict.detail += absl::StrFormat("; over the %gs limit", c.limit_seconds);
    }
    if (!verdict.pass) ++failures;
    std::printf("%s %2d %-24s %7.2fs  %s\n", verdict.pass ? "PASS" : "FAIL",
                index, c.name, seconds, verdict.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
