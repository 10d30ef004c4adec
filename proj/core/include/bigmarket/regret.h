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

#ifndef BIGMARKET_REGRET_H_
#define BIGMARKET_REGRET_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/auction_game.h"

namespace bigmarket {

enum class Feedback { kFullInformation, kBandit };

struct RegretConfig {
  int rounds = 10000;
  Feedback feedback = Feedback::kFullInformation;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

// Multiplicative weights over K actions with rewards in [0, 1].
class HedgeLearner {
 public:
  // eta = sqrt(8 ln K / T).
  HedgeLearner(int num_actions, int rounds);

  const std::vector<double>& distribution() const { return pi_; }
  double eta() const { return eta_; }
  int Sample(std::mt19937_64& rng) const;
  void Update(std::span<const double> rewards);

 private:
  void Normalize();

  double eta_;
  std::vector<double> log_weight_;
  std::vector<double> pi_;
};

// Exp3 with uniform exploration tuned for horizon T; rewards in [0, 1], only
// the chosen action's reward is observed.
class Exp3Learner {
 public:
  Exp3Learner(int num_actions, int rounds);

  const std::vector<double>& distribution() const { return pi_; }
  double exploration() const { return gamma_; }
  int Sample(std::mt19937_64& rng) const;
  void Update(int chosen, double reward);

 private:
  void Normalize();

  double gamma_;
  std::vector<double> log_weight_;
  std::vector<double> pi_;
};

// Full-information regret bookkeeping against the best fixed action:
// max_k Σ_t r_t(k) - Σ_t <π_t, r_t>.
class RegretTracker {
 public:
  explicit RegretTracker(int num_actions) : cumulative_(num_actions, 0.0) {}

  void Record(std::span<const double> pi, std::span<const double> rewards);
  double Regret() const;

 private:
  std::vector<double> cumulative_;
  double earned_ = 0.0;
};

// 2·sqrt(T ln K): the full-information budget Φ(K, T) per unit of payoff
// range χ.
double HedgeRegretBudget(int num_actions, int rounds);

// 2·sqrt(e - 1)·sqrt(T K ln K)·2: the Exp3 expected-regret bound for payoffs
// in [-1, 1].
double Exp3RegretBudget(int num_actions, int rounds);

struct NoRegretResult {
  double average_welfare = 0.0;   // (1/T) Σ_t SW_true(b^t; n_t)
  double optimal_welfare = 0.0;   // E[SW(OPT)] under true values
  std::vector<double> regret;     // per player, payoff units
  std::vector<double> chi;        // per player payoff bound
  std::vector<double> budget;     // per player regret budget Φ·χ
  std::vector<std::vector<double>> final_distribution;
  std::vector<double> welfare_trajectory;  // realized SW per round
  bool regret_within_budget = true;
  // max_i regret_i / χ_i.
  double max_normalized_regret = 0.0;
};

// |u_i| ≤ max(k·w_max, k·(γ_max·w_max + δ_max)) for matroid bids.
double AuctionPayoffBound(const AuctionValuation& truth,
                          const StrategyGrid& grid);

// Every player runs Hedge (or Exp3) over its strategy grid; each round draws
// a fresh multiplicity vector and each player's action independently.
absl::StatusOr<NoRegretResult> RunNoRegret(AuctionGame& game,
                                           const RegretConfig& config);

// Right-hand side of the no-regret welfare guarantee for auctions:
// (log_bound - Φ·(k·m·ζ·γ + δ)/(ρ·T))·SW(OPT), where Φ is the measured
// normalized regret. Returns -infinity when log_bound is.
double RegretWelfareGuarantee(const AuctionPoaBounds& bounds,
                              double normalized_regret, int k, int num_goods,
                              double zeta, double gamma, double delta,
                              double rho, int rounds, double optimal_welfare);

}  // namespace bigmarket

#endif  // BIGMARKET_REGRET_H_
