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

#include "bigmarket/fisher_market.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "bigmarket/flow.h"

namespace bigmarket {
namespace {

using Family = FisherUtility::Family;

double Sum(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

absl::Status ValidateMarket(std::span<const double> budgets,
                            std::span<const FisherUtility> utilities,
                            std::span<const double> reserves) {
  if (budgets.empty()) return absl::InvalidArgumentError("no buyers");
  if (budgets.size() != utilities.size()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%d budgets but %d utilities", budgets.size(),
                        utilities.size()));
  }
  const int m = utilities[0].num_goods();
  if (m == 0) return absl::InvalidArgumentError("no goods");
  for (size_t i = 0; i < budgets.size(); ++i) {
    if (!(budgets[i] > 0.0) || !std::isfinite(budgets[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("budget of buyer ", i, " must be positive"));
    }
    if (utilities[i].num_goods() != m) {
      return absl::InvalidArgumentError(
          absl::StrCat("buyer ", i, " has a utility over ",
                       utilities[i].num_goods(), " goods, expected ", m));
    }
  }
  if (!reserves.empty()) {
    if (static_cast<int>(reserves.size()) != m) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%d reserves for %d goods", reserves.size(), m));
    }
    for (double r : reserves) {
      if (!(r >= 0.0) || !std::isfinite(r)) {
        return absl::InvalidArgumentError("reserves must be finite and >= 0");
      }
    }
  }
  return absl::OkStatus();
}

// Goods with a positive weight in at least one utility.
std::vector<bool> WantedGoods(std::span<const FisherUtility> utilities) {
  std::vector<bool> wanted(utilities[0].num_goods(), false);
  for (const FisherUtility& u : utilities) {
    for (int j = 0; j < u.num_goods(); ++j) {
      if (u.weights()[j] > 0.0) wanted[j] = true;
    }
  }
  return wanted;
}

double Reserve(std::span<const double> reserves, int j) {
  return reserves.empty() ? 0.0 : reserves[j];
}

// Fills the derived fields of `eq` from prices and allocation.
void Finish(std::span<const FisherUtility> utilities,
            const std::vector<bool>& wanted, FisherEquilibrium& eq) {
  const int n = static_cast<int>(utilities.size());
  const int m = static_cast<int>(eq.prices.size());
  eq.unsold.assign(m, 1.0);
  eq.excess_demand.assign(m, -1.0);
  for (int j = 0; j < m; ++j) {
    double sold = 0.0;
    for (int i = 0; i < n; ++i) sold += eq.allocation[i][j];
    eq.unsold[j] = std::max(0.0, 1.0 - sold);
    eq.excess_demand[j] = sold - 1.0;
  }
  eq.utilities.resize(n);
  for (int i = 0; i < n; ++i) {
    eq.utilities[i] = utilities[i].Evaluate(eq.allocation[i]);
  }
  eq.floored_goods.clear();
  for (int j = 0; j < m; ++j) {
    if (!wanted[j]) eq.floored_goods.push_back(j);
  }
}

// Dual minus primal of the reserve-augmented Eisenberg-Gale program at prices
// p ≥ r and a feasible allocation.
double DualityGap(std::span<const double> budgets,
                  std::span<const FisherUtility> utilities,
                  std::span<const double> reserves,
                  std::span<const double> prices,
                  const FisherAllocation& allocation) {
  double dual = Sum(prices);
  for (size_t i = 0; i < budgets.size(); ++i) {
    const double e = budgets[i];
    dual += e * (std::log(e / utilities[i].UnitCost(prices)) - 1.0);
  }
  return dual - EisenbergGaleObjective(budgets, utilities, reserves,
                                       allocation);
}

// Share of budget buyer `u` puts on each good when re-spending in
// proportion to the utility each good contributes at bundle x.
void SpendingShares(const FisherUtility& u, std::span<const double> x,
                    std::vector<double>& shares) {
  const int m = u.num_goods();
  const std::vector<double>& a = u.weights();
  shares.assign(m, 0.0);
  double total = 0.0;
  switch (u.family()) {
    case Family::kCobbDouglas:
      for (int j = 0; j < m; ++j) shares[j] = a[j];
      return;
    case Family::kLinear:
      for (int j = 0; j < m; ++j) total += shares[j] = a[j] * x[j];
      break;
    case Family::kCes:
      for (int j = 0; j < m; ++j) {
        if (x[j] > 0.0) total += shares[j] = a[j] * std::pow(x[j], u.rho());
      }
      break;
  }
  if (total > 0.0) {
    for (double& s : shares) s /= total;
  } else {
    const double weight_sum = Sum(a);
    for (int j = 0; j < m; ++j) shares[j] = a[j] / weight_sum;
  }
}

FisherEquilibrium CobbDouglasClosedForm(std::span<const double> budgets,
                                        std::span<const FisherUtility> utils,
                                        std::span<const double> reserves,
                                        const std::vector<bool>& wanted,
                                        double floor) {
  const int n = static_cast<int>(budgets.size());
  const int m = utils[0].num_goods();
  FisherEquilibrium eq;
  eq.prices.assign(m, 0.0);
  for (int j = 0; j < m; ++j) {
    double spend = 0.0;
    for (int i = 0; i < n; ++i) spend += budgets[i] * utils[i].weights()[j];
    eq.prices[j] = std::max(Reserve(reserves, j), spend);
    if (!wanted[j]) eq.prices[j] = std::max(eq.prices[j], floor);
  }
  eq.allocation.assign(n, std::vector<double>(m, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      eq.allocation[i][j] = budgets[i] * utils[i].weights()[j] / eq.prices[j];
    }
  }
  eq.method = "cobb-douglas-closed-form";
  Finish(utils, wanted, eq);
  return eq;
}

// Exact equilibrium of a linear market recovered from approximate prices:
// guesses the best-bang-per-buck graph, rebuilds prices from weight ratios
// along it, and confirms feasibility with a max flow. Any prices passing the
// checks are the (unique) equilibrium prices.
class LinearPolisher {
 public:
  LinearPolisher(std::span<const double> budgets,
                 std::span<const FisherUtility> utils,
                 std::span<const double> reserves,
                 const std::vector<bool>& wanted, double floor)
      : budgets_(budgets),
        utils_(utils),
        reserves_(reserves),
        wanted_(wanted),
        floor_(floor),
        n_(static_cast<int>(budgets.size())),
        m_(utils[0].num_goods()) {}

  std::optional<FisherEquilibrium> Polish(std::span<const double> prices,
                                          const FisherAllocation& spending) {
    for (double tau : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-3, 1e-2}) {
      if (auto eq = TryThreshold(prices, spending, tau)) return eq;
    }
    return std::nullopt;
  }

 private:
  double A(int i, int j) const { return utils_[i].weights()[j]; }

  std::vector<std::vector<int>> MbbEdges(std::span<const double> prices,
                                         double tau) const {
    std::vector<std::vector<int>> edges(n_);
    for (int i = 0; i < n_; ++i) {
      double best = 0.0;
      for (int j = 0; j < m_; ++j) {
        if (wanted_[j]) best = std::max(best, A(i, j) / prices[j]);
      }
      for (int j = 0; j < m_; ++j) {
        if (wanted_[j] && A(i, j) > 0.0 &&
            A(i, j) / prices[j] >= (1.0 - tau) * best) {
          edges[i].push_back(j);
        }
      }
    }
    return edges;
  }

  // Rebuilds prices consistent with `edges`, one scale factor per connected
  // component. Empty on an inconsistent cycle or an isolated wanted good.
  std::optional<std::vector<double>> RebuildPrices(
      const std::vector<std::vector<int>>& edges) const {
    std::vector<std::vector<int>> buyers_of(m_);
    for (int i = 0; i < n_; ++i) {
      for (int j : edges[i]) buyers_of[j].push_back(i);
    }
    std::vector<double> price(m_, 0.0);
    std::vector<double> bang(n_, 0.0);
    std::vector<bool> good_seen(m_, false), buyer_seen(n_, false);
    for (int root = 0; root < m_; ++root) {
      if (!wanted_[root] || good_seen[root]) continue;
      if (buyers_of[root].empty()) return std::nullopt;
      std::vector<int> goods{root}, buyers;
      good_seen[root] = true;
      price[root] = 1.0;
      // Alternating BFS; queue entries are goods (≥ 0) or ~buyer.
      std::queue<int> queue;
      queue.push(root);
      while (!queue.empty()) {
        const int node = queue.front();
        queue.pop();
        if (node >= 0) {
          for (int i : buyers_of[node]) {
            const double b = A(i, node) / price[node];
            if (!buyer_seen[i]) {
              buyer_seen[i] = true;
              bang[i] = b;
              buyers.push_back(i);
              queue.push(~i);
            } else if (std::abs(b - bang[i]) > 1e-9 * bang[i]) {
              return std::nullopt;
            }
          }
        } else {
          const int i = ~node;
          for (int j : edges[i]) {
            const double q = A(i, j) / bang[i];
            if (!good_seen[j]) {
              good_seen[j] = true;
              price[j] = q;
              goods.push_back(j);
              queue.push(j);
            } else if (std::abs(q - price[j]) > 1e-9 * price[j]) {
              return std::nullopt;
            }
          }
        }
      }
      double budget = 0.0, value = 0.0, reserve_factor = 0.0;
      for (int i : buyers) budget += budgets_[i];
      for (int j : goods) {
        value += price[j];
        reserve_factor = std::max(reserve_factor, Reserve(reserves_, j) / price[j]);
      }
      const double factor = std::max(budget / value, reserve_factor);
      for (int j : goods) price[j] *= factor;
    }
    for (int j = 0; j < m_; ++j) {
      if (!wanted_[j]) price[j] = std::max(Reserve(reserves_, j), floor_);
    }
    return price;
  }

  std::optional<FisherEquilibrium> TryThreshold(
      std::span<const double> approx, const FisherAllocation& spending,
      double tau) const {
    std::optional<std::vector<double>> prices =
        RebuildPrices(MbbEdges(approx, tau));
    if (!prices) return std::nullopt;
    const std::vector<double>& p = *prices;
    // Exact best-bang-per-buck graph under the rebuilt prices.
    const std::vector<std::vector<int>> edges = MbbEdges(p, 1e-12);
    // Goods above their reserve must clear; goods at it may keep supply.
    std::vector<bool> must_clear(m_, false);
    for (int j = 0; j < m_; ++j) {
      must_clear[j] =
          wanted_[j] && p[j] > Reserve(reserves_, j) * (1.0 + 1e-12);
    }
    const double total_budget = Sum(budgets_);
    const int source = n_ + m_, sink = source + 1;
    RealMaxFlow flow(n_ + m_ + 2);
    std::vector<std::vector<std::pair<int, int>>> arc_of(n_);
    for (int i = 0; i < n_; ++i) {
      flow.AddArc(source, i, budgets_[i]);
      for (int j : edges[i]) {
        arc_of[i].push_back({j, flow.AddArc(i, n_ + j, total_budget)});
      }
    }
    double clearing_value = 0.0;
    for (int j = 0; j < m_; ++j) {
      if (must_clear[j]) {
        flow.AddArc(n_ + j, sink, p[j]);
        clearing_value += p[j];
      }
    }
    const double tol = 1e-11 * std::max(1.0, total_budget);
    double routed = flow.Solve(source, sink);
    if (routed < clearing_value - tol) return std::nullopt;
    for (int j = 0; j < m_; ++j) {
      if (wanted_[j] && !must_clear[j]) flow.AddArc(n_ + j, sink, p[j]);
    }
    routed += flow.Solve(source, sink);
    if (routed < total_budget - tol) return std::nullopt;

    FisherAllocation spend(n_, std::vector<double>(m_, 0.0));
    if (!Balance(edges, p, must_clear, spending, spend)) {
      for (int i = 0; i < n_; ++i) {
        for (auto [j, arc] : arc_of[i]) spend[i][j] = flow.Flow(arc);
      }
    }
    FisherEquilibrium eq;
    eq.prices = p;
    eq.allocation.assign(n_, std::vector<double>(m_, 0.0));
    for (int i = 0; i < n_; ++i) {
      for (int j : edges[i]) eq.allocation[i][j] = spend[i][j] / p[j];
    }
    return eq;
  }

  // Matrix scaling of the approximate spending restricted to the exact
  // graph, so that rows match budgets and columns match goods' values (or
  // stay below them for goods at their reserve). Keeps symmetric buyers
  // symmetric. False when it does not converge.
  bool Balance(const std::vector<std::vector<int>>& edges,
               std::span<const double> p, const std::vector<bool>& must_clear,
               const FisherAllocation& start, FisherAllocation& out) const {
    for (int i = 0; i < n_; ++i) {
      for (int j : edges[i]) out[i][j] = std::max(start[i][j], 1e-300);
    }
    const double tol = 1e-13 * std::max(1.0, Sum(budgets_));
    std::vector<double> column(m_);
    for (int round = 0; round < 20000; ++round) {
      for (int i = 0; i < n_; ++i) {
        double row = 0.0;
        for (int j : edges[i]) row += out[i][j];
        for (int j : edges[i]) out[i][j] *= budgets_[i] / row;
      }
      std::fill(column.begin(), column.end(), 0.0);
      for (int i = 0; i < n_; ++i) {
        for (int j : edges[i]) column[j] += out[i][j];
      }
      double worst = 0.0;
      for (int j = 0; j < m_; ++j) {
        if (!wanted_[j]) continue;
        const double excess =
            must_clear[j] ? std::abs(column[j] - p[j]) : column[j] - p[j];
        worst = std::max(worst, excess);
      }
      if (worst <= tol) return true;
      for (int i = 0; i < n_; ++i) {
        for (int j : edges[i]) {
          if (must_clear[j] || column[j] > p[j]) {
            out[i][j] *= p[j] / column[j];
          }
        }
      }
    }
    return false;
  }

  std::span<const double> budgets_;
  std::span<const FisherUtility> utils_;
  std::span<const double> reserves_;
  const std::vector<bool>& wanted_;
  double floor_;
  int n_, m_;
};

absl::StatusOr<FisherEquilibrium> ProportionalResponse(
    std::span<const double> budgets, std::span<const FisherUtility> utils,
    std::span<const double> reserves, const std::vector<bool>& wanted,
    const FisherSolverOptions& options) {
  const int n = static_cast<int>(budgets.size());
  const int m = utils[0].num_goods();
  const double scale = std::max(1.0, Sum(budgets));
  const bool all_linear =
      std::all_of(utils.begin(), utils.end(), [](const FisherUtility& u) {
        return u.family() == Family::kLinear;
      });
  FisherAllocation bids(n, std::vector<double>(m, 0.0));
  FisherAllocation x(n, std::vector<double>(m, 0.0));
  std::vector<double> prices(m), shares;
  for (int i = 0; i < n; ++i) {
    const double total = Sum(utils[i].weights());
    for (int j = 0; j < m; ++j) {
      bids[i][j] = budgets[i] * utils[i].weights()[j] / total;
    }
  }
  LinearPolisher polisher(budgets, utils, reserves, wanted,
                          options.price_floor);
  double gap = std::numeric_limits<double>::infinity();
  int iteration = 0;
  for (; iteration < options.max_iterations; ++iteration) {
    for (int j = 0; j < m; ++j) {
      double spend = 0.0;
      for (int i = 0; i < n; ++i) spend += bids[i][j];
      prices[j] = std::max(Reserve(reserves, j), spend);
      if (!wanted[j]) prices[j] = std::max(prices[j], options.price_floor);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) x[i][j] = bids[i][j] / prices[j];
    }
    if (iteration % 25 == 0) {
      gap = DualityGap(budgets, utils, reserves, prices, x);
      if (gap <= options.gap_tolerance * scale) break;
      if (all_linear && options.polish_linear && gap <= 1e-3 * scale) {
        if (auto eq = polisher.Polish(prices, bids)) {
          eq->iterations = iteration;
          eq->method = "proportional-response+polish";
          Finish(utils, wanted, *eq);
          return *std::move(eq);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      SpendingShares(utils[i], x[i], shares);
      for (int j = 0; j < m; ++j) bids[i][j] = budgets[i] * shares[j];
    }
  }
  if (iteration == options.max_iterations) {
    gap = DualityGap(budgets, utils, reserves, prices, x);
    if (gap > options.acceptable_gap * scale) {
      return absl::ResourceExhaustedError(absl::StrFormat(
          "proportional response stopped after %d iterations with duality "
          "gap %.3g",
          iteration, gap));
    }
  }
  FisherEquilibrium eq;
  eq.prices = prices;
  eq.allocation = std::move(x);
  eq.iterations = iteration;
  eq.gap = std::max(0.0, gap);
  eq.method = "proportional-response";
  Finish(utils, wanted, eq);
  return eq;
}

absl::StatusOr<FisherEquilibrium> Tatonnement(
    std::span<const double> budgets, std::span<const FisherUtility> utils,
    std::span<const double> reserves, const std::vector<bool>& wanted,
    const FisherSolverOptions& options) {
  const int n = static_cast<int>(budgets.size());
  const int m = utils[0].num_goods();
  const int num_wanted = static_cast<int>(
      std::count(wanted.begin(), wanted.end(), true));
  std::vector<double> prices(m);
  for (int j = 0; j < m; ++j) {
    prices[j] = std::max(Reserve(reserves, j),
                         wanted[j] ? Sum(budgets) / num_wanted
                                   : options.price_floor);
  }
  FisherAllocation x(n);
  std::vector<double> excess(m);
  // Largest clearing violation at p; fills x and excess.
  auto evaluate = [&](const std::vector<double>& p, FisherAllocation& alloc,
                      std::vector<double>& z) -> double {
    z.assign(m, -1.0);
    for (int i = 0; i < n; ++i) {
      alloc[i] = *FisherDemand(utils[i], p, budgets[i]);
      for (int j = 0; j < m; ++j) z[j] += alloc[i][j];
    }
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
      if (!wanted[j]) continue;
      const bool at_reserve = p[j] <= Reserve(reserves, j);
      worst = std::max(worst, at_reserve ? std::max(0.0, z[j]) : std::abs(z[j]));
    }
    return worst;
  };
  double residual = evaluate(prices, x, excess);
  double step = 0.5;
  std::vector<double> trial(m), trial_excess(m);
  FisherAllocation trial_x(n);
  int iteration = 0;
  for (; iteration < options.max_iterations &&
         residual > options.clearing_tolerance && step > 1e-14;
       ++iteration) {
    for (int j = 0; j < m; ++j) {
      trial[j] = wanted[j] ? std::max(Reserve(reserves, j),
                                      prices[j] * (1.0 + step * excess[j]))
                           : prices[j];
    }
    const double r = evaluate(trial, trial_x, trial_excess);
    if (r < residual) {
      prices.swap(trial);
      x.swap(trial_x);
      excess.swap(trial_excess);
      residual = r;
      step = std::min(0.9, step * 1.2);
    } else {
      step *= 0.5;
    }
  }
  if (residual > options.clearing_tolerance * 1e3) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "tatonnement stopped after %d iterations with excess demand %.3g",
        iteration, residual));
  }
  // Demand can overshoot supply by the residual; trim so the allocation is
  // feasible.
  for (int j = 0; j < m; ++j) {
    if (excess[j] > 0.0) {
      for (int i = 0; i < n; ++i) x[i][j] /= 1.0 + excess[j];
    }
  }
  FisherEquilibrium eq;
  eq.prices = prices;
  eq.allocation = std::move(x);
  eq.iterations = iteration;
  eq.gap = std::max(0.0, DualityGap(budgets, utils, reserves, prices,
                                    eq.allocation));
  eq.method = "tatonnement";
  Finish(utils, wanted, eq);
  return eq;
}

absl::StatusOr<FisherEquilibrium> Solve(
    std::span<const double> budgets, std::span<const FisherUtility> utilities,
    std::span<const double> reserves, const FisherSolverOptions& options) {
  if (auto s = ValidateMarket(budgets, utilities, reserves); !s.ok()) return s;
  const std::vector<bool> wanted = WantedGoods(utilities);
  auto all = [&](Family f) {
    return std::all_of(utilities.begin(), utilities.end(),
                       [f](const FisherUtility& u) { return u.family() == f; });
  };
  if (all(Family::kCobbDouglas)) {
    return CobbDouglasClosedForm(budgets, utilities, reserves, wanted,
                                 options.price_floor);
  }
  if (all(Family::kCes)) {
    return Tatonnement(budgets, utilities, reserves, wanted, options);
  }
  return ProportionalResponse(budgets, utilities, reserves, wanted, options);
}

}  // namespace

double FisherInstance::Largeness() const {
  return Sum(budgets) / *std::max_element(budgets.begin(), budgets.end());
}

absl::StatusOr<FisherInstance> FisherInstance::Create(
    std::vector<double> budgets, std::vector<FisherUtility> utilities,
    std::vector<double> reserves) {
  if (auto s = ValidateMarket(budgets, utilities, reserves); !s.ok()) return s;
  FisherInstance instance;
  instance.num_goods = utilities[0].num_goods();
  instance.budgets = std::move(budgets);
  instance.utilities = std::move(utilities);
  instance.reserves = std::move(reserves);
  return instance;
}

absl::StatusOr<FisherEquilibrium> SolveEisenbergGale(
    std::span<const double> budgets, std::span<const FisherUtility> utilities,
    const FisherSolverOptions& options) {
  return Solve(budgets, utilities, {}, options);
}

absl::StatusOr<FisherEquilibrium> SolveEisenbergGaleWithReserves(
    std::span<const double> budgets, std::span<const FisherUtility> utilities,
    std::span<const double> reserves, const FisherSolverOptions& options) {
  if (reserves.empty()) {
    return absl::InvalidArgumentError("reserve vector is empty");
  }
  return Solve(budgets, utilities, reserves, options);
}

absl::StatusOr<FisherEquilibrium> SolveFisher(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    const FisherSolverOptions& options) {
  return Solve(instance.budgets, reports, instance.reserves, options);
}

FisherResiduals CheckFisherEquilibrium(std::span<const double> budgets,
                                       std::span<const FisherUtility> utilities,
                                       std::span<const double> reserves,
                                       const FisherEquilibrium& eq) {
  FisherResiduals res;
  const int n = static_cast<int>(budgets.size());
  const int m = static_cast<int>(eq.prices.size());
  const std::vector<bool> wanted = WantedGoods(utilities);
  for (int j = 0; j < m; ++j) {
    double sold = 0.0;
    for (int i = 0; i < n; ++i) sold += eq.allocation[i][j];
    const double r = Reserve(reserves, j);
    res.max_overselling = std::max(res.max_overselling, sold - 1.0);
    res.max_reserve_gap = std::max(res.max_reserve_gap, r - eq.prices[j]);
    const bool must_clear = wanted[j] && eq.prices[j] > r * (1.0 + 1e-9);
    if (must_clear) {
      res.max_clearing = std::max(res.max_clearing, std::abs(sold - 1.0));
    }
  }
  for (int i = 0; i < n; ++i) {
    double spent = 0.0;
    for (int j = 0; j < m; ++j) spent += eq.prices[j] * eq.allocation[i][j];
    res.max_budget_gap = std::max(res.max_budget_gap,
                                  std::abs(spent - budgets[i]));
    const double best = budgets[i] / utilities[i].UnitCost(eq.prices);
    const double got = utilities[i].Evaluate(eq.allocation[i]);
    res.max_optimality_gap =
        std::max(res.max_optimality_gap, (best - got) / best);
  }
  if (reserves.empty()) {
    double value = 0.0;
    for (int j = 0; j < m; ++j) {
      if (wanted[j]) value += eq.prices[j];
    }
    res.price_sum_gap = std::abs(value - Sum(budgets));
  }
  return res;
}

double EisenbergGaleObjective(std::span<const double> budgets,
                              std::span<const FisherUtility> utilities,
                              std::span<const double> reserves,
                              const FisherAllocation& allocation) {
  double value = 0.0;
  for (size_t i = 0; i < budgets.size(); ++i) {
    value += budgets[i] * std::log(utilities[i].Evaluate(allocation[i]));
  }
  if (!reserves.empty()) {
    for (size_t j = 0; j < reserves.size(); ++j) {
      double sold = 0.0;
      for (const auto& row : allocation) sold += row[j];
      value += reserves[j] * std::max(0.0, 1.0 - sold);
    }
  }
  return value;
}

}  // namespace bigmarket
