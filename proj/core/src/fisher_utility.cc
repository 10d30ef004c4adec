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

#include "bigmarket/fisher_utility.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace bigmarket {
namespace {

absl::Status CheckCommon(const std::vector<double>& weights, double scale) {
  if (weights.empty()) {
    return absl::InvalidArgumentError("utility needs at least one good");
  }
  double total = 0.0;
  for (double a : weights) {
    if (!std::isfinite(a) || a < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("utility weights must be finite and non-negative, got ",
                       a));
    }
    total += a;
  }
  if (total <= 0) {
    return absl::InvalidArgumentError("utility weights are all zero");
  }
  if (!std::isfinite(scale) || scale <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("utility scale must be positive, got ", scale));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<FisherUtility> FisherUtility::Linear(std::vector<double> weights,
                                                    double scale) {
  if (auto s = CheckCommon(weights, scale); !s.ok()) return s;
  return FisherUtility(Family::kLinear, std::move(weights), 0.0, scale);
}

absl::StatusOr<FisherUtility> FisherUtility::CobbDouglas(
    std::vector<double> weights, double scale) {
  if (auto s = CheckCommon(weights, scale); !s.ok()) return s;
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "Cobb-Douglas exponents must sum to 1, got %.12g", total));
  }
  for (double& a : weights) a /= total;
  return FisherUtility(Family::kCobbDouglas, std::move(weights), 0.0, scale);
}

absl::StatusOr<FisherUtility> FisherUtility::Ces(std::vector<double> weights,
                                                 double rho, double scale) {
  if (auto s = CheckCommon(weights, scale); !s.ok()) return s;
  if (!(rho > 0.0 && rho < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("CES exponent must lie in (0, 1), got ", rho));
  }
  return FisherUtility(Family::kCes, std::move(weights), rho, scale);
}

double FisherUtility::Evaluate(std::span<const double> x) const {
  const int m = num_goods();
  switch (family_) {
    case Family::kLinear: {
      double total = 0.0;
      for (int j = 0; j < m; ++j) total += weights_[j] * x[j];
      return scale_ * total;
    }
    case Family::kCobbDouglas: {
      double log_total = 0.0;
      for (int j = 0; j < m; ++j) {
        if (weights_[j] == 0.0) continue;
        if (x[j] <= 0.0) return 0.0;
        log_total += weights_[j] * std::log(x[j]);
      }
      return scale_ * std::exp(log_total);
    }
    case Family::kCes: {
      double total = 0.0;
      for (int j = 0; j < m; ++j) {
        if (x[j] > 0.0) total += weights_[j] * std::pow(x[j], rho_);
      }
      return scale_ * std::pow(total, 1.0 / rho_);
    }
  }
  return 0.0;
}

double FisherUtility::UnitCost(std::span<const double> p) const {
  const int m = num_goods();
  switch (family_) {
    case Family::kLinear: {
      double best = kInfinitePrice;
      for (int j = 0; j < m; ++j) {
        if (weights_[j] > 0) best = std::min(best, p[j] / weights_[j]);
      }
      return best / scale_;
    }
    case Family::kCobbDouglas: {
      double log_cost = 0.0;
      for (int j = 0; j < m; ++j) {
        if (weights_[j] > 0) {
          log_cost += weights_[j] * std::log(p[j] / weights_[j]);
        }
      }
      return std::exp(log_cost) / scale_;
    }
    case Family::kCes: {
      const double sigma = 1.0 / (1.0 - rho_);
      double total = 0.0;
      for (int j = 0; j < m; ++j) {
        if (weights_[j] > 0) {
          total += std::pow(weights_[j], sigma) * std::pow(p[j], 1.0 - sigma);
        }
      }
      return std::pow(total, 1.0 / (1.0 - sigma)) / scale_;
    }
  }
  return kInfinitePrice;
}

FisherUtility FisherUtility::WithScale(double scale) const {
  return FisherUtility(family_, weights_, rho_, scale);
}

absl::StatusOr<FisherUtility> FisherUtility::WithWeights(
    std::vector<double> weights) const {
  if (static_cast<int>(weights.size()) != num_goods()) {
    return absl::InvalidArgumentError("replacement weights change good count");
  }
  switch (family_) {
    case Family::kLinear:
      return Linear(std::move(weights), scale_);
    case Family::kCobbDouglas: {
      const double total =
          std::accumulate(weights.begin(), weights.end(), 0.0);
      if (total <= 0) {
        return absl::InvalidArgumentError("Cobb-Douglas weights are all zero");
      }
      for (double& a : weights) a /= total;
      return CobbDouglas(std::move(weights), scale_);
    }
    case Family::kCes:
      return Ces(std::move(weights), rho_, scale_);
  }
  return absl::InternalError("unknown utility family");
}

std::string FisherUtility::DebugString() const {
  switch (family_) {
    case Family::kLinear:
      return absl::StrCat("Linear(", FormatPrices(weights_), ", s=", scale_,
                          ")");
    case Family::kCobbDouglas:
      return absl::StrCat("CobbDouglas(", FormatPrices(weights_), ", s=",
                          scale_, ")");
    case Family::kCes:
      return absl::StrCat("Ces(", FormatPrices(weights_), ", rho=", rho_,
                          ", s=", scale_, ")");
  }
  return "";
}

absl::StatusOr<std::vector<double>> FisherDemand(const FisherUtility& u,
                                                 std::span<const double> p,
                                                 double budget) {
  const int m = u.num_goods();
  if (static_cast<int>(p.size()) != m) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "price vector has %d entries, utility has %d goods", p.size(), m));
  }
  for (double q : p) {
    if (!std::isfinite(q) || q <= 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "demand is unbounded unless every price is positive, got ",
          FormatPrices(p)));
    }
  }
  if (!std::isfinite(budget) || budget < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("budget must be non-negative, got ", budget));
  }
  const std::vector<double>& a = u.weights();
  std::vector<double> x(m, 0.0);
  switch (u.family()) {
    case FisherUtility::Family::kLinear: {
      double best = 0.0;
      for (int j = 0; j < m; ++j) best = std::max(best, a[j] / p[j]);
      std::vector<int> ties;
      for (int j = 0; j < m; ++j) {
        if (a[j] / p[j] >= best * (1.0 - 1e-12)) ties.push_back(j);
      }
      for (int j : ties) x[j] = budget / ties.size() / p[j];
      break;
    }
    case FisherUtility::Family::kCobbDouglas:
      for (int j = 0; j < m; ++j) x[j] = budget * a[j] / p[j];
      break;
    case FisherUtility::Family::kCes: {
      const double sigma = 1.0 / (1.0 - u.rho());
      double denom = 0.0;
      std::vector<double> share(m, 0.0);
      for (int j = 0; j < m; ++j) {
        if (a[j] > 0) {
          share[j] = std::pow(a[j], sigma) * std::pow(p[j], 1.0 - sigma);
          denom += share[j];
        }
      }
      for (int j = 0; j < m; ++j) x[j] = budget * share[j] / denom / p[j];
      break;
    }
  }
  return x;
}

}  // namespace bigmarket
