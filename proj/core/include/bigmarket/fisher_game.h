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

#ifndef BIGMARKET_FISHER_GAME_H_
#define BIGMARKET_FISHER_GAME_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/auction_game.h"
#include "bigmarket/fisher_market.h"
#include "bigmarket/fisher_utility.h"
#include "bigmarket/regret.h"

namespace bigmarket {

struct ScalingAudit {
  double t = 1.0;              // mean of the ratios
  std::vector<double> ratios;  // u_i(v) / e_i at the truthful equilibrium
  bool consistent = false;     // all ratios within 1e-6 of t
};

absl::StatusOr<ScalingAudit> AuditScaling(
    const FisherInstance& instance, const FisherSolverOptions& options = {});

// Copy of `instance` whose true utilities are rescaled so every buyer's
// truthful-equilibrium utility equals its budget. Rescaling leaves the
// equilibrium itself unchanged.
absl::StatusOr<FisherInstance> ConsistentlyScaled(
    const FisherInstance& instance, const FisherSolverOptions& options = {});

struct StrategicOutcome {
  FisherEquilibrium equilibrium;       // computed from the reports
  std::vector<double> true_utilities;  // v_i(x_i)
};

// Runs the market on `reports` (with the instance's reserves, if any) and
// values each buyer's bundle with its true utility.
absl::StatusOr<StrategicOutcome> ComputeStrategicOutcome(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    const FisherSolverOptions& options = {});

inline constexpr double kDefaultReportShifts[] = {0.05, 0.1, 0.2};

// Truth first, then every weight multiplied by 1 - s and 1 + s for each shift
// s (renormalized for Cobb-Douglas), goods in order, duplicates removed.
std::vector<FisherUtility> ReportGrid(
    const FisherUtility& truth,
    std::span<const double> shifts = kDefaultReportShifts);

// Reporting game: each buyer picks a report from its grid, payoffs are true
// utilities of the resulting equilibrium bundles. Index 0 of every grid must
// be the truth.
class FisherGame {
 public:
  static absl::StatusOr<FisherGame> Create(
      FisherInstance instance, std::vector<std::vector<FisherUtility>> grids,
      const FisherSolverOptions& options = {});

  const FisherInstance& instance() const { return instance_; }
  int num_players() const { return instance_.num_buyers(); }
  int grid_size(int player) const {
    return static_cast<int>(grids_[player].size());
  }
  const std::vector<FisherUtility>& grid(int player) const {
    return grids_[player];
  }
  double profile_space_size() const;
  // Deviation gains up to this are treated as numerical noise: tight for
  // closed-form markets, looser for iterative solvers.
  double nash_tolerance() const { return tolerance_; }

  std::vector<FisherUtility> Reports(const StrategyProfile& profile) const;
  // True utilities at `profile`, memoized.
  absl::StatusOr<std::vector<double>> Evaluate(const StrategyProfile& profile);
  const std::vector<double>& truthful_utilities() const { return truthful_; }
  int64_t evaluations() const { return evaluations_; }

 private:
  FisherGame(FisherInstance instance,
             std::vector<std::vector<FisherUtility>> grids,
             FisherSolverOptions options, double tolerance)
      : instance_(std::move(instance)),
        grids_(std::move(grids)),
        options_(options),
        tolerance_(tolerance) {}

  FisherInstance instance_;
  std::vector<std::vector<FisherUtility>> grids_;
  FisherSolverOptions options_;
  double tolerance_;
  std::vector<double> truthful_;
  std::map<StrategyProfile, std::vector<double>> cache_;
  int64_t evaluations_ = 0;
};

// Exact certification: no buyer gains more than nash_tolerance (relative to
// max(1, u_i)) from any unilateral grid deviation.
absl::StatusOr<Certification> CertifyFisherNash(FisherGame& game,
                                                const StrategyProfile& profile);

struct FisherEquilibriumReport {
  StrategyProfile profile;
  std::vector<double> utilities;
  // (Π_i (u_i(b) / u_i(v))^{e_i})^{1 / Σ e_i}.
  double ratio_gm = 1.0;
  // Σ u_i(b) / Σ u_i(v).
  double ratio_sum = 1.0;
  Certification certification;
};

absl::StatusOr<FisherEquilibriumReport> MakeFisherReport(
    FisherGame& game, const StrategyProfile& profile);

struct FisherSearchResult {
  std::vector<FisherEquilibriumReport> equilibria;
  bool exhaustive = false;
  int converged_restarts = 0;
  int worst_gm = -1;
  int worst_sum = -1;
};

// Same strategy as SearchEquilibria: full enumeration up to
// exhaustive_limit profiles, otherwise best-response dynamics from truth and
// restarts-1 seeded random profiles.
absl::StatusOr<FisherSearchResult> SearchFisherEquilibria(
    FisherGame& game, const EquilibriumSearchOptions& options = {});

// e^{-m/L}.
double FisherPoaBound(int num_goods, double largeness);
// e^{-2m/L}, the guarantee with reserves that the argument supports.
double FisherReservePoaBound(int num_goods, double largeness);
// e^{-2m/(5L)}, the stronger constant as stated; reported alongside.
double FisherReserveStatedBound(int num_goods, double largeness);

// Reserves must satisfy r_j ≤ p*_j / 4 at the truthful equilibrium p*.
absl::Status CheckReservePrecondition(const FisherInstance& instance,
                                      const FisherSolverOptions& options = {});

struct PricePerturbationVerdict {
  bool without_below = true;  // p(b_{-i}) ≼ p(b)
  bool with_within = true;    // p(b) ≼ p(b_{-i}) + e_i
  bool truth_within = true;   // p(v_i, b_{-i}) ≼ p(b) + max_k e_k
  double worst_slack = 0.0;   // smallest margin over all three, per good
  bool holds() const { return without_below && with_within && truth_within; }
};

// Compares equilibrium prices with buyer i reporting reports[i], reporting
// truthfully, and absent, componentwise with `tolerance`. Reserves are
// ignored. Needs at least two buyers.
absl::StatusOr<PricePerturbationVerdict> VerifyPricePerturbation(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    int buyer, double tolerance = 1e-8,
    const FisherSolverOptions& options = {});

struct SmoothFisherVerdict {
  double lhs = 0.0;  // Σ_i e_i log u_i(v_i, b_{-i})
  double rhs = 0.0;  // Σ_i e_i log u_i(v) - m·max_i e_i
  bool holds = false;
};

absl::StatusOr<SmoothFisherVerdict> VerifySmoothFisher(
    const FisherInstance& instance, std::span<const FisherUtility> reports,
    const FisherSolverOptions& options = {});

struct CompressedPrices {
  std::vector<double> prices;
  double t = 1.0;
};

// Clamps each ratio q_j / p*_j into [l, t] with t ≥ 1 chosen so the prices
// still sum to Σ e_i. Requires Σ q_j = Σ e_i.
absl::StatusOr<CompressedPrices> CompressPrices(std::span<const double> q,
                                                std::span<const double> p_star,
                                                double l, double budget_sum);

struct FisherNoRegretResult {
  double average_welfare = 0.0;   // (1/T) Σ_t Σ_i u_i(b^t)
  double truthful_welfare = 0.0;  // Σ_i u_i(v)
  double lambda = 0.0;            // max_j p*_j / r_j
  std::vector<double> regret;     // per buyer, utility units
  std::vector<double> chi;        // λ·u_i(v)
  double max_normalized_regret = 0.0;
  double rhs = 0.0;  // (e^{-2m/L} - Φ/T·λ)·Σ u_i(v)
  bool regret_within_budget = true;
  bool holds = false;
};

// Hedge (or Exp3) over each buyer's report grid in a market with reserves
// r_j ∈ [p*_j/λ, p*_j/4]. Reserves of zero are rejected.
absl::StatusOr<FisherNoRegretResult> RunNoRegretFisher(
    FisherGame& game, const RegretConfig& config);

}  // namespace bigmarket

#endif  // BIGMARKET_FISHER_GAME_H_
