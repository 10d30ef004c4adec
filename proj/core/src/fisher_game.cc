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

#include "bigmarket/fisher_game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "bigmarket/seed.h"

namespace bigmarket {
namespace {

double Sum(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

bool SameReport(const FisherUtility& a, const FisherUtility& b) {
  if (a.family() != b.family() || a.rho() != b.rho() ||
      a.num_goods() != b.num_goods()) {
    return false;
  }
  for (int j = 0; j < a.num_goods(); ++j) {
    if (std::abs(a.weights()[j] - b.weights()[j]) > 1e-15) return false;
  }
  return true;
}

absl::StatusOr<std::vector<double>> TruthfulPrices(
    const FisherInstance& instance, const FisherSolverOptions& options) {
  auto eq = SolveEisenbergGale(instance.budgets, instance.utilities, options);
  if (!eq.ok()) return eq.status();
  return eq->prices;
}

struct BestReply {
  int strategy = 0;
  double utility = 0.0;
  double current = 0.0;
};

absl::StatusOr<BestReply> FisherBestResponse(FisherGame& game,
                                             StrategyProfile profile,
                                             int player) {
  BestReply best;
  auto current = game.Evaluate(profile);
  if (!current.ok()) return current.status();
  best.current = (*current)[player];
  best.strategy = profile[player];
  best.utility = best.current;
  const double slack =
      game.nash_tolerance() * std::max(1.0, std::abs(best.current));
  for (int s = 0; s < game.grid_size(player); ++s) {
    profile[player] = s;
    auto u = game.Evaluate(profile);
    if (!u.ok()) return u.status();
    if ((*u)[player] > best.utility + slack) {
      best.utility = (*u)[player];
      best.strategy = s;
    }
  }
  return best;
}

}  // namespace

absl::StatusOr<ScalingAudit> AuditScaling(const FisherInstance& instance,
                                          const FisherSolverOptions& options) {
  auto outcome =
      ComputeStrategicOutcome(instance, instance.utilities, options);
  if (!outcome.ok()) return outcome.status();
  ScalingAudit audit;
  for (int i = 0; i < instance.num_buyers(); ++i) {
    audit.ratios.push_back(outcome->true_utilities[i] / instance.budgets[i]);
  }
  audit.t = Sum(audit.ratios) / audit.ratios.size();
  audit.consistent = std::all_of(
      audit.ratios.begin(), audit.ratios.end(),
      [&](double r) { return std::abs(r - audit.t) <= 1e-6; });
  return audit;
}

absl::StatusOr<FisherInstance> ConsistentlyScaled(
    const FisherInstance& instance, const FisherSolverOptions& options) {
  auto outcome =
      ComputeStrategicOutcome(instance, instance.utilities, options);
  if (!outcome.ok()) return outcome.status();
  FisherInstance scaled = instance;
  for (int i = 0; i < instance.num_buyers(); ++i) {
    const double u = outcome->true_utilities[i];
    if (!(u > 0.0)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "buyer ", i, " has zero utility at the truthful equilibrium"));
    }
    const FisherUtility& v = instance.utilities[i];
    scaled.utilities[i] = v.WithScale(v.scale() * instance.budgets[i] / u);
  }
  return scaled;
}

absl::StatusOr<StrategicOutcome> ComputeStrategicOutcome(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    const FisherSolverOptions& options) {
  if (static_cast<int>(reports.size()) != instance.num_buyers()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%d reports for %d buyers", reports.size(),
                        instance.num_buyers()));
  }
  auto eq = SolveFisher(instance, reports, options);
  if (!eq.ok()) return eq.status();
  StrategicOutcome out;
  out.true_utilities.resize(instance.num_buyers());
  for (int i = 0; i < instance.num_buyers(); ++i) {
    out.true_utilities[i] = instance.utilities[i].Evaluate(eq->allocation[i]);
  }
  out.equilibrium = *std::move(eq);
  return out;
}

std::vector<FisherUtility> ReportGrid(const FisherUtility& truth,
                                      std::span<const double> shifts) {
  std::vector<FisherUtility> grid{truth};
  for (double s : shifts) {
    for (int j = 0; j < truth.num_goods(); ++j) {
      if (truth.weights()[j] == 0.0) continue;
      for (double sign : {-1.0, 1.0}) {
        std::vector<double> w = truth.weights();
        w[j] *= 1.0 + sign * s;
        auto report = truth.WithWeights(std::move(w));
        if (!report.ok()) continue;
        const bool duplicate = std::any_of(
            grid.begin(), grid.end(),
            [&](const FisherUtility& g) { return SameReport(g, *report); });
        if (!duplicate) grid.push_back(*std::move(report));
      }
    }
  }
  return grid;
}

absl::StatusOr<FisherGame> FisherGame::Create(
    FisherInstance instance, std::vector<std::vector<FisherUtility>> grids,
    const FisherSolverOptions& options) {
  if (static_cast<int>(grids.size()) != instance.num_buyers()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%d report grids for %d buyers", grids.size(),
                        instance.num_buyers()));
  }
  bool closed_form = true;
  for (int i = 0; i < instance.num_buyers(); ++i) {
    if (grids[i].empty() || !SameReport(grids[i][0], instance.utilities[i])) {
      return absl::InvalidArgumentError(absl::StrCat(
          "report grid of buyer ", i, " must start with the true utility"));
    }
    for (const FisherUtility& r : grids[i]) {
      if (r.num_goods() != instance.num_goods) {
        return absl::InvalidArgumentError(
            absl::StrCat("report of buyer ", i, " has the wrong good count"));
      }
      closed_form &= r.family() == FisherUtility::Family::kCobbDouglas;
    }
  }
  FisherGame game(std::move(instance), std::move(grids), options,
                  closed_form ? 1e-12 : 1e-7);
  auto truthful = game.Evaluate(StrategyProfile(game.num_players(), 0));
  if (!truthful.ok()) return truthful.status();
  game.truthful_ = *truthful;
  return game;
}

double FisherGame::profile_space_size() const {
  double size = 1.0;
  for (const auto& g : grids_) size *= static_cast<double>(g.size());
  return size;
}

std::vector<FisherUtility> FisherGame::Reports(
    const StrategyProfile& profile) const {
  std::vector<FisherUtility> reports;
  reports.reserve(profile.size());
  for (int i = 0; i < num_players(); ++i) {
    reports.push_back(grids_[i][profile[i]]);
  }
  return reports;
}

absl::StatusOr<std::vector<double>> FisherGame::Evaluate(
    const StrategyProfile& profile) {
  if (auto it = cache_.find(profile); it != cache_.end()) return it->second;
  const std::vector<FisherUtility> reports = Reports(profile);
  auto outcome = ComputeStrategicOutcome(instance_, reports, options_);
  if (!outcome.ok()) return outcome.status();
  ++evaluations_;
  return cache_.emplace(profile, std::move(outcome->true_utilities))
      .first->second;
}

absl::StatusOr<Certification> CertifyFisherNash(
    FisherGame& game, const StrategyProfile& profile) {
  auto current = game.Evaluate(profile);
  if (!current.ok()) return current.status();
  const std::vector<double> base = *current;
  Certification cert;
  StrategyProfile deviated = profile;
  for (int i = 0; i < game.num_players(); ++i) {
    const double slack =
        game.nash_tolerance() * std::max(1.0, std::abs(base[i]));
    for (int s = 0; s < game.grid_size(i); ++s) {
      if (s == profile[i]) continue;
      deviated[i] = s;
      auto u = game.Evaluate(deviated);
      if (!u.ok()) return u.status();
      const double gain = (*u)[i] - base[i];
      if (gain > slack && gain > cert.gain) {
        cert.kind = Certification::Kind::kNotEquilibrium;
        cert.player = i;
        cert.deviation = s;
        cert.gain = gain;
      }
    }
    deviated[i] = profile[i];
  }
  return cert;
}

absl::StatusOr<FisherEquilibriumReport> MakeFisherReport(
    FisherGame& game, const StrategyProfile& profile) {
  auto utilities = game.Evaluate(profile);
  if (!utilities.ok()) return utilities.status();
  auto cert = CertifyFisherNash(game, profile);
  if (!cert.ok()) return cert.status();
  const std::vector<double>& truth = game.truthful_utilities();
  const std::vector<double>& e = game.instance().budgets;
  FisherEquilibriumReport report;
  report.profile = profile;
  report.utilities = *utilities;
  report.certification = *cert;
  double log_ratio = 0.0, welfare = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    const double u = report.utilities[i];
    log_ratio += u > 0.0 ? e[i] * std::log(u / truth[i]) : -kInfinitePrice;
    welfare += u;
  }
  report.ratio_gm = std::exp(log_ratio / Sum(e));
  report.ratio_sum = welfare / Sum(truth);
  return report;
}

absl::StatusOr<FisherSearchResult> SearchFisherEquilibria(
    FisherGame& game, const EquilibriumSearchOptions& options) {
  FisherSearchResult result;
  std::set<StrategyProfile> seen;
  auto consider = [&](const StrategyProfile& profile) -> absl::Status {
    if (!seen.insert(profile).second) return absl::OkStatus();
    auto report = MakeFisherReport(game, profile);
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
      while (i >= 0 && ++profile[i] == game.grid_size(i)) profile[i--] = 0;
      if (i < 0) break;
    }
  } else {
    for (int r = 0; r < options.restarts; ++r) {
      StrategyProfile profile(players, 0);
      if (r > 0) {
        std::mt19937_64 rng(DeriveSeed(options.seed, /*stream=*/0x4252, r));
        for (int i = 0; i < players; ++i) {
          profile[i] = static_cast<int>(rng() % game.grid_size(i));
        }
      }
      bool converged = false;
      for (int round = 0; round < options.max_rounds && !converged; ++round) {
        converged = true;
        for (int i = 0; i < players; ++i) {
          auto br = FisherBestResponse(game, profile, i);
          if (!br.ok()) return br.status();
          if (br->strategy != profile[i]) {
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
    const auto& eq = result.equilibria[e];
    if (result.worst_gm < 0 ||
        eq.ratio_gm < result.equilibria[result.worst_gm].ratio_gm) {
      result.worst_gm = e;
    }
    if (result.worst_sum < 0 ||
        eq.ratio_sum < result.equilibria[result.worst_sum].ratio_sum) {
      result.worst_sum = e;
    }
  }
  return result;
}

double FisherPoaBound(int num_goods, double largeness) {
  return std::exp(-num_goods / largeness);
}

double FisherReservePoaBound(int num_goods, double largeness) {
  return std::exp(-2.0 * num_goods / largeness);
}

double FisherReserveStatedBound(int num_goods, double largeness) {
  return std::exp(-2.0 * num_goods / (5.0 * largeness));
}

absl::Status CheckReservePrecondition(const FisherInstance& instance,
                                      const FisherSolverOptions& options) {
  if (!instance.has_reserves()) return absl::OkStatus();
  auto p = TruthfulPrices(instance, options);
  if (!p.ok()) return p.status();
  for (int j = 0; j < instance.num_goods; ++j) {
    if (instance.reserves[j] > (*p)[j] / 4.0 * (1.0 + 1e-12)) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "reserve %.6g of good %d exceeds a quarter of the truthful price "
          "%.6g",
          instance.reserves[j], j, (*p)[j]));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<PricePerturbationVerdict> VerifyPricePerturbation(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    int buyer, double tolerance, const FisherSolverOptions& options) {
  const int n = instance.num_buyers();
  if (n < 2) return absl::InvalidArgumentError("needs at least two buyers");
  if (buyer < 0 || buyer >= n) {
    return absl::OutOfRangeError(absl::StrCat("no buyer ", buyer));
  }
  if (static_cast<int>(reports.size()) != n) {
    return absl::InvalidArgumentError("one report per buyer required");
  }
  const std::vector<double>& e = instance.budgets;
  auto with = SolveEisenbergGale(e, reports, options);
  if (!with.ok()) return with.status();
  std::vector<FisherUtility> hybrid(reports.begin(), reports.end());
  hybrid[buyer] = instance.utilities[buyer];
  auto truthful = SolveEisenbergGale(e, hybrid, options);
  if (!truthful.ok()) return truthful.status();
  std::vector<double> rest_budgets;
  std::vector<FisherUtility> rest_reports;
  for (int k = 0; k < n; ++k) {
    if (k == buyer) continue;
    rest_budgets.push_back(e[k]);
    rest_reports.push_back(reports[k]);
  }
  auto without = SolveEisenbergGale(rest_budgets, rest_reports, options);
  if (!without.ok()) return without.status();

  const double max_budget = *std::max_element(e.begin(), e.end());
  PricePerturbationVerdict verdict;
  verdict.worst_slack = kInfinitePrice;
  for (int j = 0; j < instance.num_goods; ++j) {
    const double p = with->prices[j];
    const double low = p - without->prices[j];
    const double high = without->prices[j] + e[buyer] - p;
    const double swap = p + max_budget - truthful->prices[j];
    verdict.without_below &= low >= -tolerance;
    verdict.with_within &= high >= -tolerance;
    verdict.truth_within &= swap >= -tolerance;
    verdict.worst_slack = std::min({verdict.worst_slack, low, high, swap});
  }
  return verdict;
}

absl::StatusOr<SmoothFisherVerdict> VerifySmoothFisher(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    const FisherSolverOptions& options) {
  const int n = instance.num_buyers();
  const std::vector<double>& e = instance.budgets;
  auto truthful = ComputeStrategicOutcome(instance, instance.utilities, options);
  if (!truthful.ok()) return truthful.status();
  SmoothFisherVerdict verdict;
  std::vector<FisherUtility> hybrid(reports.begin(), reports.end());
  for (int i = 0; i < n; ++i) {
    hybrid[i] = instance.utilities[i];
    auto outcome = ComputeStrategicOutcome(instance, hybrid, options);
    if (!outcome.ok()) return outcome.status();
    hybrid[i] = reports[i];
    const double u = outcome->true_utilities[i];
    verdict.lhs += u > 0.0 ? e[i] * std::log(u) : -kInfinitePrice;
    verdict.rhs += e[i] * std::log(truthful->true_utilities[i]);
  }
  verdict.rhs -= instance.num_goods * *std::max_element(e.begin(), e.end());
  verdict.holds =
      verdict.lhs >= verdict.rhs - 1e-9 * std::max(1.0, std::abs(verdict.rhs));
  return verdict;
}

absl::StatusOr<CompressedPrices> CompressPrices(std::span<const double> q,
                                                std::span<const double> p_star,
                                                double l, double budget_sum) {
  const int m = static_cast<int>(q.size());
  if (m == 0 || static_cast<int>(p_star.size()) != m) {
    return absl::InvalidArgumentError("price vectors must be non-empty and "
                                      "of equal length");
  }
  if (!(l > 0.0 && l <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("l must lie in (0, 1], got ", l));
  }
  for (int j = 0; j < m; ++j) {
    if (!(p_star[j] > 0.0) || !(q[j] >= 0.0)) {
      return absl::InvalidArgumentError(
          "reference prices must be positive and q non-negative");
    }
  }
  const double tol = 1e-12 * std::max(1.0, budget_sum);
  if (std::abs(Sum(q) - budget_sum) > 1e3 * tol) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "q sums to %.12g, expected %.12g", Sum(q), budget_sum));
  }
  std::vector<double> ratio(m), floor_value(m);
  std::vector<int> order(m);
  for (int j = 0; j < m; ++j) {
    ratio[j] = q[j] / p_star[j];
    floor_value[j] = p_star[j] * std::max(ratio[j], l);
  }
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ratio[a] > ratio[b]; });
  CompressedPrices out;
  const double unclamped = Sum(floor_value);
  if (unclamped < budget_sum - tol) {
    return absl::FailedPreconditionError(
        "no threshold t restores the price sum: raising low ratios to l "
        "already falls short");
  }
  if (unclamped <= budget_sum + tol) {
    out.t = std::max(1.0, ratio[order[0]]);
    out.prices = floor_value;
    return out;
  }
  // Lower the h largest ratios to a common t; valid when t stays between
  // the h-th and (h+1)-th largest ratio.
  double rest = unclamped, top_reference = 0.0;
  for (int h = 1; h <= m; ++h) {
    const int j = order[h - 1];
    rest -= floor_value[j];
    top_reference += p_star[j];
    const double t = (budget_sum - rest) / top_reference;
    const double upper = ratio[j];
    const double lower = h < m ? ratio[order[h]] : -kInfinitePrice;
    const double slack = 1e-12 * std::max(1.0, t);
    if (t <= upper + slack && t >= lower - slack && t >= 1.0 - slack &&
        t >= l - slack) {
      out.t = std::max(t, 1.0);
      out.prices = floor_value;
      for (int k = 0; k < h; ++k) out.prices[order[k]] = p_star[order[k]] * t;
      return out;
    }
  }
  return absl::FailedPreconditionError(
      "no threshold t >= 1 restores the price sum");
}

absl::StatusOr<FisherNoRegretResult> RunNoRegretFisher(
    FisherGame& game, const RegretConfig& config) {
  if (auto s = config.Validate(); !s.ok()) return s;
  const FisherInstance& instance = game.instance();
  if (!instance.has_reserves()) {
    return absl::FailedPreconditionError("no-regret guarantee needs reserves");
  }
  if (auto s = CheckReservePrecondition(instance); !s.ok()) return s;
  auto p_star = TruthfulPrices(instance, {});
  if (!p_star.ok()) return p_star.status();
  FisherNoRegretResult result;
  for (int j = 0; j < instance.num_goods; ++j) {
    if (!(instance.reserves[j] > 0.0)) {
      return absl::FailedPreconditionError(
          absl::StrCat("reserve of good ", j, " must be positive"));
    }
    result.lambda = std::max(result.lambda, (*p_star)[j] / instance.reserves[j]);
  }
  const int players = game.num_players();
  const int rounds = config.rounds;
  const bool bandit = config.feedback == Feedback::kBandit;
  const std::vector<double>& truth = game.truthful_utilities();
  result.truthful_welfare = Sum(truth);

  std::vector<HedgeLearner> hedge;
  std::vector<Exp3Learner> exp3;
  std::vector<RegretTracker> trackers;
  std::vector<std::mt19937_64> rngs;
  std::vector<double> budget;
  for (int i = 0; i < players; ++i) {
    const int k = game.grid_size(i);
    hedge.emplace_back(k, rounds);
    exp3.emplace_back(k, rounds);
    trackers.emplace_back(k);
    rngs.emplace_back(DeriveSeed(config.seed, /*stream=*/1, i));
    result.chi.push_back(result.lambda * truth[i]);
    budget.push_back(
        (bandit ? Exp3RegretBudget(k, rounds) : HedgeRegretBudget(k, rounds)) *
        result.chi[i]);
  }
  StrategyProfile action(players);
  std::vector<double> rewards, scaled;
  double welfare_sum = 0.0;
  for (int t = 0; t < rounds; ++t) {
    for (int i = 0; i < players; ++i) {
      action[i] = bandit ? exp3[i].Sample(rngs[i]) : hedge[i].Sample(rngs[i]);
    }
    auto realized = game.Evaluate(action);
    if (!realized.ok()) return realized.status();
    welfare_sum += Sum(*realized);
    for (int i = 0; i < players; ++i) {
      const int k = game.grid_size(i);
      rewards.assign(k, 0.0);
      StrategyProfile deviated = action;
      for (int s = 0; s < k; ++s) {
        deviated[i] = s;
        auto u = game.Evaluate(deviated);
        if (!u.ok()) return u.status();
        rewards[s] = (*u)[i];
      }
      trackers[i].Record(bandit ? exp3[i].distribution()
                                : hedge[i].distribution(),
                         rewards);
      scaled.assign(k, 0.0);
      for (int s = 0; s < k; ++s) {
        scaled[s] = std::clamp(rewards[s] / result.chi[i], 0.0, 1.0);
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
    if (regret > budget[i]) result.regret_within_budget = false;
  }
  result.rhs = (FisherReservePoaBound(instance.num_goods, instance.Largeness()) -
                result.max_normalized_regret / rounds * result.lambda) *
               result.truthful_welfare;
  result.holds = result.average_welfare >=
                 result.rhs - 1e-9 * std::max(1.0, std::abs(result.rhs));
  return result;
}

}  // namespace bigmarket
