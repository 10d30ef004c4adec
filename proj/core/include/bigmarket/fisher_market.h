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

#ifndef BIGMARKET_FISHER_MARKET_H_
#define BIGMARKET_FISHER_MARKET_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/fisher_utility.h"

namespace bigmarket {

// Buyers with money budgets and utilities over m divisible goods, one unit
// of each. Reserves are optional seller values per unit.
struct FisherInstance {
  int num_goods = 0;
  std::vector<double> budgets;
  std::vector<FisherUtility> utilities;
  std::vector<double> reserves;  // empty: no reserves

  int num_buyers() const { return static_cast<int>(budgets.size()); }
  bool has_reserves() const { return !reserves.empty(); }
  // Σ e_i / max e_i.
  double Largeness() const;

  static absl::StatusOr<FisherInstance> Create(
      std::vector<double> budgets, std::vector<FisherUtility> utilities,
      std::vector<double> reserves = {});
};

using FisherAllocation = std::vector<std::vector<double>>;

struct FisherEquilibrium {
  std::vector<double> prices;
  FisherAllocation allocation;        // buyers × goods
  std::vector<double> unsold;         // 1 - Σ_i x_ij
  std::vector<double> excess_demand;  // Σ_i x_ij - 1
  std::vector<double> utilities;      // under the utilities solved for
  // Goods no buyer values; priced at the floor (or reserve) and unsold.
  std::vector<int> floored_goods;
  int iterations = 0;
  // Duality gap of the (reserve-augmented) Eisenberg-Gale program for
  // iterative solvers, 0 for closed forms and exact polishes.
  double gap = 0.0;
  std::string method;
};

struct FisherSolverOptions {
  int max_iterations = 200000;
  // Proportional response stops once the duality gap is below this.
  double gap_tolerance = 1e-10;
  // Gap accepted (relative to max(1, Σ e)) when the iteration cap is hit.
  double acceptable_gap = 1e-6;
  // Tâtonnement stops once max_j |z_j| is below this.
  double clearing_tolerance = 1e-11;
  double price_floor = 1e-12;
  // Attempt to recover exact prices for linear markets from the
  // best-bang-per-buck graph once proportional response has converged.
  bool polish_linear = true;
};

// Fisher equilibrium for budgets and (reported) utilities, i.e. the optimum
// of max Σ e_i log u_i(x_i) s.t. Σ_i x_ij ≤ 1. Cobb-Douglas markets use the
// closed form, all-CES markets tâtonnement, everything else proportional
// response; linear markets are then polished to exact prices. Returns
// ResourceExhausted with residuals when the iteration cap is hit.
absl::StatusOr<FisherEquilibrium> SolveEisenbergGale(
    std::span<const double> budgets, std::span<const FisherUtility> utilities,
    const FisherSolverOptions& options = {});

// Equilibrium with reserve prices r: maximizes
// Σ e_i log u_i(x_i) + Σ_j r_j y_j s.t. Σ_i x_ij + y_j ≤ 1, so p_j ≥ r_j and
// goods priced above their reserve clear.
absl::StatusOr<FisherEquilibrium> SolveEisenbergGaleWithReserves(
    std::span<const double> budgets, std::span<const FisherUtility> utilities,
    std::span<const double> reserves, const FisherSolverOptions& options = {});

// Solves with or without reserves depending on whether `reserves` is empty.
absl::StatusOr<FisherEquilibrium> SolveFisher(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    const FisherSolverOptions& options = {});

struct FisherResiduals {
  double max_clearing = 0.0;    // |z_j| over goods that must clear
  double max_overselling = 0.0; // max(0, Σ_i x_ij - 1)
  double max_budget_gap = 0.0;  // |p·x_i - e_i|
  double price_sum_gap = 0.0;   // |Σ p_j - Σ e_i|, no reserves only
  double max_reserve_gap = 0.0; // max(0, r_j - p_j)
  // Largest relative utility shortfall against each buyer's demand.
  double max_optimality_gap = 0.0;
};

FisherResiduals CheckFisherEquilibrium(std::span<const double> budgets,
                                       std::span<const FisherUtility> utilities,
                                       std::span<const double> reserves,
                                       const FisherEquilibrium& eq);

// Σ e_i log u_i(x_i) + Σ_j r_j y_j.
double EisenbergGaleObjective(std::span<const double> budgets,
                              std::span<const FisherUtility> utilities,
                              std::span<const double> reserves,
                              const FisherAllocation& allocation);

}  // namespace bigmarket

#endif  // BIGMARKET_FISHER_MARKET_H_
