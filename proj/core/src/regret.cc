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

#include "bigmarket/regret.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "bigmarket/seed.h"

namespace bigmarket {
namespace {

int SampleFrom(const std::vector<double>& pi, std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cumulative = 0.0;
  for (size_t k = 0; k < pi.size(); ++k) {
    cumulative += pi[k];
    if (u < cumulative) return static_cast<int>(k);
  }
  return static_cast<int>(pi.size()) - 1;
}

void Softmax(const std::vector<double>& log_weight, std::vector<double>* pi) {
  const double top = *std::max_element(log_weight.begin(), log_weight.end());
  double total = 0.0;
  for (size_t k = 0; k < log_weight.size(); ++k) {
    (*pi)[k] = std::exp(log_weight[k] - top);
    total += (*pi)[k];
  }
  for (double& p : *pi) p /= total;
}

}  // namespace

absl::Status RegretConfig::Validate() const {
  if (rounds < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("regret dynamics need at least one round, got ", rounds));
  }
  return absl::OkStatus();
}

HedgeLearner::HedgeLearner(int num_actions, int rounds)
    : eta_(num_actions > 1
               ? std::sqrt(8.0 * std::log(num_actions) / std::max(rounds, 1))
               : 0.0),
      log_weight_(num_actions, 0.0),
      pi_(num_actions, 1.0 / num_actions) {}

int HedgeLearner::Sample(std::mt19937_64& rng) const {
  return SampleFrom(pi_, rng);
}

void HedgeLearner::Update(std::span<const double> rewards) {
  for (size_t k = 0; k < log_weight_.size(); ++k) {
    log_weight_[k] += eta_ * rewards[k];
  }
  Softmax(log_weight_, &pi_);
}

Exp3Learner::Exp3Learner(int num_actions, int rounds)
    : gamma_(num_actions > 1
                 ? std::min(1.0, std::sqrt(num_actions *
                                           std::log(num_actions) /
                                           ((std::exp(1.0) - 1.0) *
                                            std::max(rounds, 1))))
                 : 0.0),
      log_weight_(num_actions, 0.0),
      pi_(num_actions, 1.0 / num_actions) {}

int Exp3Learner::Sample(std::mt19937_64& rng) const {
  return SampleFrom(pi_, rng);
}

void Exp3Learner::Update(int chosen, double reward) {
  const int k = static_cast<int>(pi_.size());
  if (k == 1) return;
  log_weight_[chosen] += gamma_ * (reward / pi_[chosen]) / k;
  Softmax(log_weight_, &pi_);
  for (double& p : pi_) p = (1.0 - gamma_) * p + gamma_ / k;
}

void RegretTracker::Record(std::span<const double> pi,
                           std::span<const double> rewards) {
  for (size_t k = 0; k < cumulative_.size(); ++k) {
    cumulative_[k] += rewards[k];
    earned_ += pi[k] * rewards[k];
  }
}

double RegretTracker::Regret() const {
  return *std::max_element(cumulative_.begin(), cumulative_.end()) - earned_;
}

double HedgeRegretBudget(int num_actions, int rounds) {
  return 2.0 * std::sqrt(rounds * std::log(static_cast<double>(num_actions)));
}

double Exp3RegretBudget(int num_actions, int rounds) {
  return 4.0 * std::sqrt(std::exp(1.0) - 1.0) *
         std::sqrt(static_cast<double>(rounds) * num_actions *
                   std::log(static_cast<double>(num_actions)));
}

double AuctionPayoffBound(const AuctionValuation& truth,
                          const StrategyGrid& grid) {
  const double top = truth.cap() * truth.MaxItemValue();
  return std::max({top, grid.max_gamma() * top + grid.max_delta(), 1e-12});
}

absl::StatusOr<NoRegretResult> RunNoRegret(AuctionGame& game,
                                           const RegretConfig& config) {
  if (auto s = config.Validate(); !s.ok()) return s;
  const int players = game.num_players();
  const int rounds = config.rounds;
  const bool bandit = config.feedback == Feedback::kBandit;
  NoRegretResult result;
  auto opt = game.ExpectedOptimalWelfare();
  if (!opt.ok()) return opt.status();
  result.optimal_welfare = *opt;

  std::vector<HedgeLearner> hedge;
  std::vector<Exp3Learner> exp3;
  std::vector<RegretTracker> trackers;
  std::vector<std::mt19937_64> rngs;
  for (int i = 0; i < players; ++i) {
    const int k = game.grid(i).size();
    hedge.emplace_back(k, rounds);
    exp3.emplace_back(k, rounds);
    trackers.emplace_back(k);
    rngs.emplace_back(DeriveSeed(config.seed, /*stream=*/1, i));
    result.chi.push_back(
        AuctionPayoffBound(game.instance().valuations[i], game.grid(i)));
    result.budget.push_back(
        (bandit ? Exp3RegretBudget(k, rounds) : HedgeRegretBudget(k, rounds)) *
        result.chi[i]);
  }
  std::mt19937_64 supply_rng(DeriveSeed(config.seed, /*stream=*/0));

  StrategyProfile action(players);
  std::vector<double> rewards, scaled;
  double welfare_sum = 0.0;
  result.welfare_trajectory.reserve(rounds);
  for (int t = 0; t < rounds; ++t) {
    const Multiplicity n = game.distribution().Sample(supply_rng);
    for (int i = 0; i < players; ++i) {
      action[i] = bandit ? exp3[i].Sample(rngs[i]) : hedge[i].Sample(rngs[i]);
    }
    BidProfile bids = game.Bids(action);
    double welfare = 0.0;
    auto realized = game.RealizedUtilities(bids, n, &welfare);
    if (!realized.ok()) return realized.status();
    welfare_sum += welfare;
    result.welfare_trajectory.push_back(welfare);

    for (int i = 0; i < players; ++i) {
      const int k = game.grid(i).size();
      rewards.assign(k, 0.0);
      const AuctionValuation own = bids[i];
      for (int s = 0; s < k; ++s) {
        if (s == action[i]) {
          rewards[s] = (*realized)[i];
          continue;
        }
        const BidStrategy& strategy = game.grid(i)[s];
        bids[i] = game.instance().valuations[i].Scaled(strategy.gamma,
                                                       strategy.delta);
        auto u = game.RealizedUtilities(bids, n);
        if (!u.ok()) return u.status();
        rewards[s] = (*u)[i];
      }
      bids[i] = own;
      const std::vector<double>& pi =
          bandit ? exp3[i].distribution() : hedge[i].distribution();
      trackers[i].Record(pi, rewards);
      const double chi = result.chi[i];
      scaled.assign(k, 0.0);
      for (int s = 0; s < k; ++s) {
        scaled[s] = std::clamp((rewards[s] + chi) / (2.0 * chi), 0.0, 1.0);
      }
      if (bandit) {
        exp3[i].Update(action[i], scaled[action[i]]);
      } else {
        hedge[i].Update(scaled);
      }
    }
  }
  result.average_welfare = welfare_sum / rounds;
  for (int i = 0; i < players; ++i) {
    const double regret = trackers[i].Regret();
    result.regret.push_back(regret);
    result.max_normalized_regret =
        std::max(result.max_normalized_regret, regret / result.chi[i]);
    if (regret > result.budget[i]) result.regret_within_budget = false;
    result.final_distribution.push_back(bandit ? exp3[i].distribution()
                                               : hedge[i].distribution());
  }
  return result;
}

double RegretWelfareGuarantee(const AuctionPoaBounds& bounds,
                              double normalized_regret, int k, int num_goods,
                              double zeta, double gamma, double delta,
                              double rho, int rounds, double optimal_welfare) {
  if (bounds.log_vacuous) return -kInfinitePrice;
  const double deficit = normalized_regret *
                         (k * num_goods * zeta * gamma + delta) /
                         (rho * rounds);
  return (bounds.log_bound - deficit) * optimal_welfare;
}

}  // namespace bigmarket
