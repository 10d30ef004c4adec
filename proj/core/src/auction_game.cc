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

#include "bigmarket/auction_game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "bigmarket/seed.h"

namespace bigmarket {
namespace {

constexpr double kZ99 = 2.5758293035489004;

// Units of demand of a single-good matroid profile, sorted by (bid weight
// desc, bidder asc). With c copies the c-th unit (0-based) sets the English
// price and the (c-1)-th the Dutch price; unvalued copies go to zero-weight
// bidders in index order, matching WelfareOpt's canonical allocation.
class SingleGoodUnits {
 public:
  explicit SingleGoodUnits(const BidProfile& bids) : bids_(bids) {
    std::vector<int> order(bids.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return bids[a].weights()[0] > bids[b].weights()[0];
    });
    for (int i : order) {
      const double w = bids[i].weights()[0];
      if (w <= 0.0) continue;
      for (int c = 0; c < bids[i].cap(); ++c) {
        weight_.push_back(w);
        owner_.push_back(i);
      }
    }
  }

  void Settle(std::span<const AuctionValuation> truth, const PricingRule& rule,
              int copies, std::vector<double>* utility, double* welfare_true,
              double* welfare_bids) const {
    const int units = static_cast<int>(weight_.size());
    const int players = static_cast<int>(bids_.size());
    const double english = copies < units ? weight_[copies] : 0.0;
    double price = english;
    if (rule.kind() != PricingRule::Kind::kEnglish && copies > 0) {
      const double dutch = copies - 1 < units ? weight_[copies - 1] : 0.0;
      price = rule.kind() == PricingRule::Kind::kDutch
                  ? dutch
                  : (1.0 - rule.lambda()) * english + rule.lambda() * dutch;
    }
    std::vector<int> held(players, 0);
    const int sold = std::min(copies, units);
    for (int u = 0; u < sold; ++u) ++held[owner_[u]];
    int leftover = copies - sold;
    for (int i = 0; i < players && leftover > 0; ++i) {
      if (bids_[i].weights()[0] > 0.0) continue;
      const int take = std::min(leftover, bids_[i].cap());
      held[i] = take;
      leftover -= take;
    }
    utility->assign(players, 0.0);
    for (int i = 0; i < players; ++i) {
      if (held[i] == 0) continue;
      const double value = truth[i].weights()[0] * held[i];
      (*utility)[i] = value - held[i] * price;
      if (welfare_true != nullptr) *welfare_true += value;
      if (welfare_bids != nullptr) {
        *welfare_bids += bids_[i].weights()[0] * held[i];
      }
    }
  }

 private:
  const BidProfile& bids_;
  std::vector<double> weight_;
  std::vector<int> owner_;
};

}  // namespace

std::string BidStrategy::Name() const {
  if (delta == 0.0) return absl::StrCat("g", gamma);
  return absl::StrCat("g", gamma, "+d", delta);
}

StrategyGrid::StrategyGrid(std::vector<BidStrategy> strategies)
    : strategies_(std::move(strategies)) {
  for (int s = 0; s < size(); ++s) {
    if (strategies_[s].truthful()) truthful_index_ = s;
  }
}

absl::StatusOr<StrategyGrid> StrategyGrid::Create(
    std::vector<BidStrategy> grid) {
  for (const BidStrategy& s : grid) {
    if (!std::isfinite(s.gamma) || s.gamma < 0 || !std::isfinite(s.delta) ||
        s.delta < 0) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "strategy (gamma=%g, delta=%g) must have non-negative finite "
          "parameters",
          s.gamma, s.delta));
    }
  }
  std::sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) {
    return std::tie(a.gamma, a.delta) < std::tie(b.gamma, b.delta);
  });
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (std::none_of(grid.begin(), grid.end(),
                   [](const BidStrategy& s) { return s.truthful(); })) {
    return absl::InvalidArgumentError(
        "strategy grid must contain the truthful strategy (gamma=1, delta=0)");
  }
  return StrategyGrid(std::move(grid));
}

absl::StatusOr<StrategyGrid> StrategyGrid::FromGammas(
    std::vector<double> gammas) {
  std::vector<BidStrategy> grid;
  for (double g : gammas) grid.push_back({g, 0.0});
  return Create(std::move(grid));
}

StrategyGrid StrategyGrid::TruthfulOnly() {
  return StrategyGrid({BidStrategy{}});
}

double StrategyGrid::max_gamma() const {
  double best = 0.0;
  for (const auto& s : strategies_) best = std::max(best, s.gamma);
  return best;
}

double StrategyGrid::max_delta() const {
  double best = 0.0;
  for (const auto& s : strategies_) best = std::max(best, s.delta);
  return best;
}

MultiplicityScenarios BuildScenarios(const MultiplicityDistribution& dist,
                                     const ExpectationOptions& options) {
  MultiplicityScenarios out;
  if (auto atoms = dist.Enumerate(options.max_exact_atoms)) {
    out.exact = true;
    for (auto& atom : *atoms) {
      out.n.push_back(std::move(atom.n));
      out.weight.push_back(atom.probability);
    }
    return out;
  }
  out.exact = false;
  std::mt19937_64 rng(options.seed);
  const int draws = std::max(1, options.monte_carlo_draws);
  for (int d = 0; d < draws; ++d) {
    out.n.push_back(dist.Sample(rng));
    out.weight.push_back(1.0 / draws);
  }
  return out;
}

AuctionGame::AuctionGame(AuctionInstance instance,
                         MultiplicityDistribution dist, PricingRule rule,
                         std::vector<StrategyGrid> grids,
                         MultiplicityScenarios scenarios)
    : instance_(std::move(instance)),
      dist_(std::move(dist)),
      rule_(rule),
      grids_(std::move(grids)),
      scenarios_(std::move(scenarios)) {
  single_good_fast_path_ = instance_.num_goods == 1;
  for (const AuctionValuation& v : instance_.valuations) {
    if (!v.is_matroid_rank()) single_good_fast_path_ = false;
  }
}

absl::StatusOr<AuctionGame> AuctionGame::Create(
    AuctionInstance instance, MultiplicityDistribution dist, PricingRule rule,
    std::vector<StrategyGrid> grids, const ExpectationOptions& options) {
  if (dist.num_goods() != instance.num_goods) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "distribution covers %d goods, instance has %d", dist.num_goods(),
        instance.num_goods));
  }
  if (grids.size() == 1 && instance.num_bidders() > 1) {
    grids.assign(instance.num_bidders(), grids.front());
  }
  if (static_cast<int>(grids.size()) != instance.num_bidders()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%d strategy grids for %d players", grids.size(),
        instance.num_bidders()));
  }
  MultiplicityScenarios scenarios = BuildScenarios(dist, options);
  return AuctionGame(std::move(instance), std::move(dist), rule,
                     std::move(grids), std::move(scenarios));
}

double AuctionGame::profile_space_size() const {
  double size = 1.0;
  for (const auto& g : grids_) size *= g.size();
  return size;
}

BidProfile AuctionGame::Bids(const StrategyProfile& profile) const {
  BidProfile bids;
  bids.reserve(profile.size());
  for (int i = 0; i < num_players(); ++i) {
    const BidStrategy& s = grids_[i][profile[i]];
    bids.push_back(instance_.valuations[i].Scaled(s.gamma, s.delta));
  }
  return bids;
}

StrategyProfile AuctionGame::TruthfulProfile() const {
  StrategyProfile profile(num_players());
  for (int i = 0; i < num_players(); ++i) {
    profile[i] = grids_[i].truthful_index();
  }
  return profile;
}

absl::StatusOr<WalrasianOutcome> AuctionGame::Outcome(
    const BidProfile& bids, std::span<const int> n) const {
  return RunMechanism(bids, n, rule_, /*validate=*/false);
}

absl::StatusOr<std::vector<double>> AuctionGame::RealizedUtilities(
    const BidProfile& bids, std::span<const int> n,
    double* welfare_true) const {
  std::vector<double> utility;
  if (single_good_fast_path_) {
    SingleGoodUnits(bids).Settle(instance_.valuations, rule_, n[0], &utility,
                                 welfare_true, nullptr);
    return utility;
  }
  auto outcome = Outcome(bids, n);
  if (!outcome.ok()) return outcome.status();
  utility.assign(bids.size(), 0.0);
  for (size_t i = 0; i < bids.size(); ++i) {
    const Bundle& x = outcome->allocation[i];
    const double value = instance_.valuations[i].ValueOf(x);
    utility[i] = value - Payment(x, outcome->prices);
    if (welfare_true != nullptr) *welfare_true += value;
  }
  return utility;
}

absl::Status AuctionGame::EvaluateScenarios(
    const StrategyProfile& profile,
    std::vector<std::vector<double>>* utilities,
    std::vector<double>* welfare_true,
    std::vector<double>* welfare_bids) const {
  if (static_cast<int>(profile.size()) != num_players()) {
    return absl::InvalidArgumentError("profile length differs from players");
  }
  for (int i = 0; i < num_players(); ++i) {
    if (profile[i] < 0 || profile[i] >= grids_[i].size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("strategy index out of range for player ", i));
    }
  }
  const BidProfile bids = Bids(profile);
  const int num_scenarios = static_cast<int>(scenarios_.n.size());
  const int players = num_players();
  utilities->assign(num_scenarios, std::vector<double>(players, 0.0));
  welfare_true->assign(num_scenarios, 0.0);
  welfare_bids->assign(num_scenarios, 0.0);

  if (single_good_fast_path_) {
    const SingleGoodUnits units(bids);
    for (int s = 0; s < num_scenarios; ++s) {
      units.Settle(instance_.valuations, rule_, scenarios_.n[s][0],
                   &(*utilities)[s], &(*welfare_true)[s],
                   &(*welfare_bids)[s]);
    }
    return absl::OkStatus();
  }

  for (int s = 0; s < num_scenarios; ++s) {
    auto outcome = Outcome(bids, scenarios_.n[s]);
    if (!outcome.ok()) return outcome.status();
    for (int i = 0; i < players; ++i) {
      const Bundle& x = outcome->allocation[i];
      const double value = instance_.valuations[i].ValueOf(x);
      (*utilities)[s][i] = value - Payment(x, outcome->prices);
      (*welfare_true)[s] += value;
    }
    (*welfare_bids)[s] = outcome->welfare_under_bids;
  }
  return absl::OkStatus();
}

absl::StatusOr<ProfileValue> AuctionGame::Evaluate(
    const StrategyProfile& profile) {
  auto it = memo_.find(profile);
  if (it != memo_.end()) return it->second;
  std::vector<std::vector<double>> utilities;
  std::vector<double> welfare_true, welfare_bids;
  if (auto s = EvaluateScenarios(profile, &utilities, &welfare_true,
                                 &welfare_bids);
      !s.ok()) {
    return s;
  }
  ProfileValue value;
  value.utility.assign(num_players(), 0.0);
  for (size_t s = 0; s < utilities.size(); ++s) {
    const double w = scenarios_.weight[s];
    for (int i = 0; i < num_players(); ++i) {
      value.utility[i] += w * utilities[s][i];
    }
    value.welfare_true += w * welfare_true[s];
    value.welfare_bids += w * welfare_bids[s];
  }
  memo_.emplace(profile, value);
  return value;
}

absl::StatusOr<std::vector<double>> AuctionGame::PlayerScenarioUtilities(
    const StrategyProfile& profile, int i) {
  std::vector<std::vector<double>> utilities;
  std::vector<double> welfare_true, welfare_bids;
  if (auto s = EvaluateScenarios(profile, &utilities, &welfare_true,
                                 &welfare_bids);
      !s.ok()) {
    return s;
  }
  std::vector<double> out(utilities.size());
  for (size_t s = 0; s < utilities.size(); ++s) out[s] = utilities[s][i];
  return out;
}

absl::StatusOr<double> AuctionGame::ExpectedOptimalWelfare() {
  if (optimal_welfare_) return *optimal_welfare_;
  double total = 0.0;
  for (size_t s = 0; s < scenarios_.n.size(); ++s) {
    auto w = OptimalWelfare(instance_.valuations, scenarios_.n[s]);
    if (!w.ok()) return w.status();
    total += scenarios_.weight[s] * *w;
  }
  optimal_welfare_ = total;
  return total;
}

absl::StatusOr<BestResponseResult> BestResponse(AuctionGame& game,
                                                const StrategyProfile& profile,
                                                int i) {
  auto current = game.Evaluate(profile);
  if (!current.ok()) return current.status();
  BestResponseResult result;
  result.current_utility = current->utility[i];
  std::vector<double> value(game.grid(i).size());
  StrategyProfile trial = profile;
  double best = -kInfinitePrice;
  for (int s = 0; s < game.grid(i).size(); ++s) {
    trial[i] = s;
    auto v = game.Evaluate(trial);
    if (!v.ok()) return v.status();
    value[s] = v->utility[i];
    best = std::max(best, value[s]);
  }
  for (int s = game.grid(i).size() - 1; s >= 0; --s) {
    if (value[s] >= best - kNashTolerance) {
      result.strategy = s;
      result.utility = value[s];
      break;
    }
  }
  return result;
}

std::string Certification::Label() const {
  switch (kind) {
    case Kind::kExactNash:
      return "exact-nash";
    case Kind::kApproxNash:
      return absl::StrFormat("eps-nash(%.3g)", epsilon);
    case Kind::kNotEquilibrium:
      return "not-equilibrium";
  }
  return "";
}

absl::StatusOr<Certification> CertifyNash(AuctionGame& game,
                                          const StrategyProfile& profile) {
  Certification cert;
  auto current = game.Evaluate(profile);
  if (!current.ok()) return current.status();
  StrategyProfile trial = profile;
  if (game.exact()) {
    cert.kind = Certification::Kind::kExactNash;
    for (int i = 0; i < game.num_players(); ++i) {
      for (int s = 0; s < game.grid(i).size(); ++s) {
        if (s == profile[i]) continue;
        trial[i] = s;
        auto v = game.Evaluate(trial);
        if (!v.ok()) return v.status();
        const double gain = v->utility[i] - current->utility[i];
        if (gain > kNashTolerance && gain > cert.gain) {
          cert.kind = Certification::Kind::kNotEquilibrium;
          cert.player = i;
          cert.deviation = s;
          cert.gain = gain;
        }
      }
      trial[i] = profile[i];
    }
    return cert;
  }
  cert.kind = Certification::Kind::kApproxNash;
  for (int i = 0; i < game.num_players(); ++i) {
    auto base = game.PlayerScenarioUtilities(profile, i);
    if (!base.ok()) return base.status();
    for (int s = 0; s < game.grid(i).size(); ++s) {
      if (s == profile[i]) continue;
      trial[i] = s;
      auto dev = game.PlayerScenarioUtilities(trial, i);
      if (!dev.ok()) return dev.status();
      const double draws = static_cast<double>(base->size());
      double mean = 0.0;
      for (size_t d = 0; d < base->size(); ++d) mean += (*dev)[d] - (*base)[d];
      mean /= draws;
      double var = 0.0;
      for (size_t d = 0; d < base->size(); ++d) {
        const double diff = (*dev)[d] - (*base)[d] - mean;
        var += diff * diff;
      }
      const double se = draws > 1 ? std::sqrt(var / (draws - 1) / draws) : 0.0;
      const double lower = mean - kZ99 * se;
      const double upper = mean + kZ99 * se;
      cert.epsilon = std::max(cert.epsilon, upper);
      if (lower > kNashTolerance && mean > cert.gain) {
        cert.kind = Certification::Kind::kNotEquilibrium;
        cert.player = i;
        cert.deviation = s;
        cert.gain = mean;
      }
    }
    trial[i] = profile[i];
  }
  return cert;
}

absl::StatusOr<EquilibriumReport> MakeReport(AuctionGame& game,
                                             const StrategyProfile& profile) {
  EquilibriumReport report;
  report.profile = profile;
  auto value = game.Evaluate(profile);
  if (!value.ok()) return value.status();
  auto opt = game.ExpectedOptimalWelfare();
  if (!opt.ok()) return opt.status();
  report.sw_true_expected = value->welfare_true;
  report.sw_opt_expected = *opt;
  report.ratio = *opt > 0 ? value->welfare_true / *opt : 1.0;
  auto cert = CertifyNash(game, profile);
  if (!cert.ok()) return cert.status();
  report.certification = *cert;
  return report;
}

absl::StatusOr<EquilibriumSearchResult> SearchEquilibria(
    AuctionGame& game, const EquilibriumSearchOptions& options) {
  EquilibriumSearchResult result;
  std::set<StrategyProfile> seen;
  auto consider = [&](const StrategyProfile& profile) -> absl::Status {
    if (!seen.insert(profile).second) return absl::OkStatus();
    auto report = MakeReport(game, profile);
    if (!report.ok()) return report.status();
    if (report->certification.is_equilibrium()) {
      result.equilibria.push_back(*std::move(report));
    }
    return absl::OkStatus();
  };
  const int players = game.num_players();

  if (game.profile_space_size() <= options.exhaustive_limit) {
    result.exhaustive = true;
    StrategyProfile profile(players, 0);
    while (true) {
      if (auto s = consider(profile); !s.ok()) return s;
      int i = players - 1;
      while (i >= 0 && ++profile[i] == game.grid(i).size()) profile[i--] = 0;
      if (i < 0) break;
    }
  } else {
    for (int r = 0; r < options.restarts; ++r) {
      StrategyProfile profile = game.TruthfulProfile();
      if (r > 0) {
        std::mt19937_64 rng(DeriveSeed(options.seed, /*stream=*/0x4252, r));
        for (int i = 0; i < players; ++i) {
          profile[i] = static_cast<int>(rng() % game.grid(i).size());
        }
      }
      bool converged = false;
      for (int round = 0; round < options.max_rounds && !converged; ++round) {
        converged = true;
        for (int i = 0; i < players; ++i) {
          auto br = BestResponse(game, profile, i);
          if (!br.ok()) return br.status();
          if (br->utility > br->current_utility + kNashTolerance) {
            profile[i] = br->strategy;
            converged = false;
          }
        }
      }
      if (!converged) continue;
      ++result.converged_restarts;
      if (auto s = consider(profile); !s.ok()) return s;
    }
  }
  for (int e = 0; e < static_cast<int>(result.equilibria.size()); ++e) {
    if (result.worst < 0 ||
        result.equilibria[e].ratio < result.equilibria[result.worst].ratio) {
      result.worst = e;
    }
  }
  return result;
}

AuctionPoaBounds ComputeAuctionPoaBounds(int num_goods, int k,
                                         double max_point_mass, double zeta,
                                         double rho) {
  AuctionPoaBounds out;
  const double m = num_goods;
  out.badness = ComputeBadnessBounds(num_goods, k, max_point_mass);
  out.sqrt_bound =
      1.0 - 3.0 * k * zeta * m / rho *
                std::sqrt((k + 2) * m * max_point_mass *
                          LambdaMK(num_goods, k + 1));
  const double y = out.badness.y;
  if (y >= 1.0) {
    out.log_vacuous = true;
    out.log_bound = -kInfinitePrice;
  } else {
    out.log_bound = 1.0 - 3.0 * k * (k + 1) * zeta * m / rho * y *
                              std::ceil(std::log2(1.0 / y));
  }
  return out;
}

}  // namespace bigmarket
