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

#ifndef BIGMARKET_AUCTION_GAME_H_
#define BIGMARKET_AUCTION_GAME_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/badness.h"
#include "bigmarket/multiplicity.h"
#include "bigmarket/valuation.h"
#include "bigmarket/walrasian.h"

namespace bigmarket {

// Bid b = gamma·v + delta applied to a valuation (see
// AuctionValuation::Scaled).
struct BidStrategy {
  double gamma = 1.0;
  double delta = 0.0;

  bool truthful() const { return gamma == 1.0 && delta == 0.0; }
  std::string Name() const;
  friend bool operator==(const BidStrategy&, const BidStrategy&) = default;
};

// A finite strategy set, sorted by (gamma, delta) ascending. Always contains
// the truthful strategy.
class StrategyGrid {
 public:
  static absl::StatusOr<StrategyGrid> Create(std::vector<BidStrategy> grid);
  static absl::StatusOr<StrategyGrid> FromGammas(std::vector<double> gammas);
  static StrategyGrid TruthfulOnly();

  int size() const { return static_cast<int>(strategies_.size()); }
  const BidStrategy& operator[](int s) const { return strategies_[s]; }
  const std::vector<BidStrategy>& strategies() const { return strategies_; }
  int truthful_index() const { return truthful_index_; }
  double max_gamma() const;
  double max_delta() const;

 private:
  explicit StrategyGrid(std::vector<BidStrategy> strategies);

  std::vector<BidStrategy> strategies_;
  int truthful_index_ = 0;
};

// Strategy index per player.
using StrategyProfile = std::vector<int>;

// Multiplicity vectors with weights summing to 1: the exact support of the
// distribution, or equally weighted Monte Carlo draws.
struct MultiplicityScenarios {
  std::vector<Multiplicity> n;
  std::vector<double> weight;
  bool exact = true;
};

struct ExpectationOptions {
  double max_exact_atoms = 1e4;
  int monte_carlo_draws = 2000;
  uint64_t seed = 0;
};

MultiplicityScenarios BuildScenarios(const MultiplicityDistribution& dist,
                                     const ExpectationOptions& options);

struct ProfileValue {
  // Expected realized utility v_i(x_i) - p·x_i per player, true values.
  std::vector<double> utility;
  double welfare_true = 0.0;
  double welfare_bids = 0.0;
};

// A Bayesian auction game: fixed true valuations, a multiplicity
// distribution, a pricing rule and a strategy grid per player. Profile
// evaluations are memoized; the object is not thread-safe.
class AuctionGame {
 public:
  static absl::StatusOr<AuctionGame> Create(
      AuctionInstance instance, MultiplicityDistribution dist,
      PricingRule rule, std::vector<StrategyGrid> grids,
      const ExpectationOptions& options = {});

  int num_players() const { return instance_.num_bidders(); }
  const AuctionInstance& instance() const { return instance_; }
  const MultiplicityDistribution& distribution() const { return dist_; }
  const PricingRule& rule() const { return rule_; }
  const StrategyGrid& grid(int i) const { return grids_[i]; }
  const MultiplicityScenarios& scenarios() const { return scenarios_; }
  bool exact() const { return scenarios_.exact; }
  double profile_space_size() const;

  BidProfile Bids(const StrategyProfile& profile) const;
  StrategyProfile TruthfulProfile() const;

  absl::StatusOr<ProfileValue> Evaluate(const StrategyProfile& profile);

  // Realized utility of player i in each scenario.
  absl::StatusOr<std::vector<double>> PlayerScenarioUtilities(
      const StrategyProfile& profile, int i);

  // Outcome for one multiplicity vector under explicit bids.
  absl::StatusOr<WalrasianOutcome> Outcome(const BidProfile& bids,
                                           std::span<const int> n) const;

  // Realized utilities (true values) for one multiplicity vector; adds the
  // realized true welfare to *welfare_true when it is non-null.
  absl::StatusOr<std::vector<double>> RealizedUtilities(
      const BidProfile& bids, std::span<const int> n,
      double* welfare_true = nullptr) const;

  // E[SW(OPT)] under true valuations.
  absl::StatusOr<double> ExpectedOptimalWelfare();

  size_t evaluations() const { return memo_.size(); }

 private:
  AuctionGame(AuctionInstance instance, MultiplicityDistribution dist,
              PricingRule rule, std::vector<StrategyGrid> grids,
              MultiplicityScenarios scenarios);

  // Per-scenario realized utilities (rows) and true/bid welfare.
  absl::Status EvaluateScenarios(
      const StrategyProfile& profile,
      std::vector<std::vector<double>>* utilities,
      std::vector<double>* welfare_true,
      std::vector<double>* welfare_bids) const;

  AuctionInstance instance_;
  MultiplicityDistribution dist_;
  PricingRule rule_;
  std::vector<StrategyGrid> grids_;
  MultiplicityScenarios scenarios_;
  bool single_good_fast_path_ = false;
  std::map<StrategyProfile, ProfileValue> memo_;
  std::optional<double> optimal_welfare_;
};

// Utility gains below this count as no gain.
inline constexpr double kNashTolerance = 1e-9;

struct BestResponseResult {
  int strategy = 0;
  double utility = 0.0;
  double current_utility = 0.0;
};

// Maximizes player i's expected utility over its grid with the others
// fixed; among maximizers (within kNashTolerance) the largest index, i.e.
// the largest gamma, wins.
absl::StatusOr<BestResponseResult> BestResponse(AuctionGame& game,
                                                const StrategyProfile& profile,
                                                int i);

struct Certification {
  enum class Kind { kExactNash, kApproxNash, kNotEquilibrium };
  Kind kind = Kind::kExactNash;
  // Largest upper 99% confidence bound on any deviation gain (approximate
  // mode), 0 in exact mode.
  double epsilon = 0.0;
  // Profitable deviation when not an equilibrium.
  int player = -1;
  int deviation = -1;
  double gain = 0.0;

  bool is_equilibrium() const { return kind != Kind::kNotEquilibrium; }
  std::string Label() const;
};

// Exact mode: no unilateral grid deviation gains more than kNashTolerance.
// Monte Carlo mode: paired per-draw gains give a two-sided 99% interval; the
// profile is rejected when some interval lies entirely above the tolerance.
absl::StatusOr<Certification> CertifyNash(AuctionGame& game,
                                          const StrategyProfile& profile);

struct EquilibriumReport {
  StrategyProfile profile;
  double sw_true_expected = 0.0;
  double sw_opt_expected = 0.0;
  double ratio = 1.0;
  Certification certification;
};

struct EquilibriumSearchOptions {
  int restarts = 32;
  double exhaustive_limit = 1e5;
  int max_rounds = 200;
  uint64_t seed = 0;
};

struct EquilibriumSearchResult {
  std::vector<EquilibriumReport> equilibria;  // distinct, in discovery order
  bool exhaustive = false;
  int converged_restarts = 0;
  // Index of the equilibrium with the smallest welfare ratio, if any.
  int worst = -1;
};

// Enumerates every profile when the profile space is at most
// exhaustive_limit; otherwise runs best-response dynamics from the truthful
// profile and restarts-1 seeded random profiles and certifies every fixed
// point.
absl::StatusOr<EquilibriumSearchResult> SearchEquilibria(
    AuctionGame& game, const EquilibriumSearchOptions& options = {});

absl::StatusOr<EquilibriumReport> MakeReport(AuctionGame& game,
                                             const StrategyProfile& profile);

// Welfare guarantees for equilibria of large auctions. Both are at most 1
// and may be negative (vacuous) at small N.
struct AuctionPoaBounds {
  double sqrt_bound = 0.0;
  double log_bound = 0.0;
  // True when Y ≥ 1, where the logarithmic form is undefined; log_bound is
  // then reported as -infinity.
  bool log_vacuous = false;
  BadnessBounds badness;
};

// sqrt_bound = 1 - (3kζm/ρ)·sqrt((k + 2)·m·F·Λ(m, k + 1)),
// log_bound  = 1 - (3k(k + 1)ζm/ρ)·Y·⌈log2(1/Y)⌉ with Y from
// ComputeBadnessBounds(m, k, F).
AuctionPoaBounds ComputeAuctionPoaBounds(int num_goods, int k,
                                         double max_point_mass, double zeta,
                                         double rho);

}  // namespace bigmarket

#endif  // BIGMARKET_AUCTION_GAME_H_
