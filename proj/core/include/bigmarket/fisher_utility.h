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

#ifndef BIGMARKET_FISHER_UTILITY_H_
#define BIGMARKET_FISHER_UTILITY_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/types.h"

namespace bigmarket {

// Homogeneous degree-1 utility over divisible goods:
//   Linear       u(x) = s · Σ a_j x_j
//   CobbDouglas  u(x) = s · Π x_j^{a_j},          Σ a_j = 1
//   Ces          u(x) = s · (Σ a_j x_j^ρ)^{1/ρ},   0 < ρ < 1
// where s > 0 is a scale multiplier. All three induce weak gross substitutes
// demand.
class FisherUtility {
 public:
  enum class Family { kLinear, kCobbDouglas, kCes };

  static absl::StatusOr<FisherUtility> Linear(std::vector<double> weights,
                                              double scale = 1.0);
  static absl::StatusOr<FisherUtility> CobbDouglas(std::vector<double> weights,
                                                   double scale = 1.0);
  static absl::StatusOr<FisherUtility> Ces(std::vector<double> weights,
                                           double rho, double scale = 1.0);

  Family family() const { return family_; }
  int num_goods() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double rho() const { return rho_; }
  double scale() const { return scale_; }

  double Evaluate(std::span<const double> x) const;

  // Minimum spend needed for one unit of utility at prices p (the unit
  // expenditure function). Infinite when no positively weighted good has a
  // finite price.
  double UnitCost(std::span<const double> p) const;

  FisherUtility WithScale(double scale) const;
  // Same family and scale with replacement weights (renormalized for
  // Cobb-Douglas).
  absl::StatusOr<FisherUtility> WithWeights(std::vector<double> weights) const;

  std::string DebugString() const;

 private:
  FisherUtility(Family family, std::vector<double> weights, double rho,
                double scale)
      : family_(family), weights_(std::move(weights)), rho_(rho), scale_(scale) {}

  Family family_;
  std::vector<double> weights_;
  double rho_;
  double scale_;
};

// A utility-maximizing bundle subject to p·x ≤ budget. The whole budget is
// spent. Linear demand splits the budget evenly across goods tied for the best
// bang-per-buck. Rejects any zero price.
absl::StatusOr<std::vector<double>> FisherDemand(const FisherUtility& u,
                                                 std::span<const double> p,
                                                 double budget);

}  // namespace bigmarket

#endif  // BIGMARKET_FISHER_UTILITY_H_
