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

#include "bigmarket/valuation.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace bigmarket {
namespace {

absl::Status CheckWeights(const std::vector<double>& weights) {
  if (weights.empty()) {
    return absl::InvalidArgumentError("valuation needs at least one good");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("item weights must be finite and non-negative, got ", w));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckBundle(const AuctionValuation& v, std::span<const int> x) {
  if (static_cast<int>(x.size()) != v.num_goods()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "bundle has %d entries, valuation has %d goods", x.size(),
        v.num_goods()));
  }
  for (int c : x) {
    if (c < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative count in bundle ", FormatBundle(x)));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckPrices(const AuctionValuation& v, std::span<const double> p) {
  if (static_cast<int>(p.size()) != v.num_goods()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "price vector has %d entries, valuation has %d goods", p.size(),
        v.num_goods()));
  }
  for (double q : p) {
    if (std::isnan(q) || q < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("prices must be non-negative, got ", FormatPrices(p)));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<AuctionValuation> AuctionValuation::UnitDemand(
    std::vector<double> weights) {
  if (auto s = CheckWeights(weights); !s.ok()) return s;
  const int m = static_cast<int>(weights.size());
  return AuctionValuation(Kind::kUnitDemand, m, 1, std::move(weights), {});
}

absl::StatusOr<AuctionValuation> AuctionValuation::KDemand(
    std::vector<double> weights, int cap) {
  if (auto s = CheckWeights(weights); !s.ok()) return s;
  if (cap < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("demand cap must be at least 1, got ", cap));
  }
  const int m = static_cast<int>(weights.size());
  return AuctionValuation(Kind::kKDemand, m, cap, std::move(weights), {});
}

absl::StatusOr<AuctionValuation> AuctionValuation::Explicit(
    int num_goods, std::vector<XorAtom> atoms) {
  if (num_goods < 1 || num_goods > kMaxExplicitGoods) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "explicit valuations support 1..%d goods, got %d", kMaxExplicitGoods,
        num_goods));
  }
  int cap = 1;
  for (const XorAtom& a : atoms) {
    if (static_cast<int>(a.bundle.size()) != num_goods) {
      return absl::InvalidArgumentError(
          absl::StrCat("atom bundle ", FormatBundle(a.bundle),
                       " does not match ", num_goods, " goods"));
    }
    for (int c : a.bundle) {
      if (c < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("negative count in atom ", FormatBundle(a.bundle)));
      }
    }
    const int size = BundleSize(a.bundle);
    if (size > kMaxExplicitItems) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "atom %s has %d items; the limit is %d", FormatBundle(a.bundle),
          size, kMaxExplicitItems));
    }
    if (!std::isfinite(a.value) || a.value < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("atom values must be finite and non-negative, got ",
                       a.value));
    }
    cap = std::max(cap, size);
  }
  return AuctionValuation(Kind::kExplicit, num_goods, cap, {},
                          std::move(atoms));
}

void AuctionValuation::SortGoods() {
  order_.resize(weights_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [this](int a, int b) {
    return weights_[a] > weights_[b];
  });
}

double AuctionValuation::MaxItemValue() const {
  if (is_matroid_rank()) {
    return *std::max_element(weights_.begin(), weights_.end());
  }
  double best = 0.0;
  Bundle unit(num_goods_, 0);
  for (int j = 0; j < num_goods_; ++j) {
    unit[j] = 1;
    best = std::max(best, ValueOf(unit));
    unit[j] = 0;
  }
  return best;
}

double AuctionValuation::ValueOf(std::span<const int> x) const {
  if (!is_matroid_rank()) {
    double best = 0.0;
    for (const XorAtom& a : atoms_) {
      if (a.value > best && Dominated(a.bundle, x)) best = a.value;
    }
    return best;
  }
  int remaining = cap_;
  double total = 0.0;
  for (size_t idx = 0; idx < order_.size() && remaining > 0; ++idx) {
    const int j = order_[idx];
    const int take = std::min(remaining, x[j]);
    total += take * weights_[j];
    remaining -= take;
  }
  return total;
}

AuctionValuation AuctionValuation::Scaled(double gamma, double delta) const {
  if (is_matroid_rank()) {
    std::vector<double> w = weights_;
    for (double& x : w) x = gamma * x + delta / cap_;
    return AuctionValuation(kind_, num_goods_, cap_, std::move(w), {});
  }
  std::vector<XorAtom> atoms = atoms_;
  for (XorAtom& a : atoms) a.value = gamma * a.value + delta;
  return AuctionValuation(kind_, num_goods_, cap_, {}, std::move(atoms));
}

std::string AuctionValuation::DebugString() const {
  switch (kind_) {
    case Kind::kUnitDemand:
      return absl::StrCat("UnitDemand(", FormatPrices(weights_), ")");
    case Kind::kKDemand:
      return absl::StrCat("KDemand(", FormatPrices(weights_), ", k=", cap_,
                          ")");
    case Kind::kExplicit: {
      std::string out = "Explicit{";
      for (size_t a = 0; a < atoms_.size(); ++a) {
        absl::StrAppend(&out, a ? ", " : "", FormatBundle(atoms_[a].bundle),
                        "->", atoms_[a].value);
      }
      return out + "}";
    }
  }
  return "";
}

absl::StatusOr<double> Value(const AuctionValuation& v,
                             std::span<const int> x) {
  if (auto s = CheckBundle(v, x); !s.ok()) return s;
  return v.ValueOf(x);
}

double Payment(std::span<const int> x, std::span<const double> p) {
  double total = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j] != 0) total += x[j] * p[j];
  }
  return total;
}

double QuasiLinearUtility(const AuctionValuation& v, std::span<const int> x,
                          std::span<const double> p) {
  return v.ValueOf(x) - Payment(x, p);
}

absl::StatusOr<std::vector<Bundle>> Demand(const AuctionValuation& v,
                                           std::span<const double> p) {
  if (auto s = CheckPrices(v, p); !s.ok()) return s;
  const std::vector<Bundle> candidates =
      EnumerateBundles(v.num_goods(), v.cap());
  std::vector<double> utility(candidates.size());
  double best = -kInfinitePrice;
  for (size_t b = 0; b < candidates.size(); ++b) {
    utility[b] = QuasiLinearUtility(v, candidates[b], p);
    best = std::max(best, utility[b]);
  }
  std::vector<Bundle> out;
  for (size_t b = 0; b < candidates.size(); ++b) {
    if (utility[b] >= best - kValueTolerance) out.push_back(candidates[b]);
  }
  return out;
}

absl::StatusOr<double> IndirectUtility(const AuctionValuation& v,
                                       std::span<const double> p) {
  if (auto s = CheckPrices(v, p); !s.ok()) return s;
  double best = 0.0;  // the empty bundle
  for (const Bundle& x : EnumerateBundles(v.num_goods(), v.cap())) {
    best = std::max(best, QuasiLinearUtility(v, x, p));
  }
  return best;
}

absl::StatusOr<Bundle> MinimalBundle(const AuctionValuation& v,
                                     std::span<const int> x) {
  if (auto s = CheckBundle(v, x); !s.ok()) return s;
  const double target = v.ValueOf(x);
  std::vector<Bundle> keep;
  for (Bundle& d : EnumerateBundles(v.num_goods(), v.cap(), x)) {
    if (v.ValueOf(d) >= target - kValueTolerance) keep.push_back(std::move(d));
  }
  // EnumerateBundles is lexicographically ascending, so the first minimal
  // element is the lexicographically smallest one.
  for (const Bundle& d : keep) {
    bool minimal = true;
    for (const Bundle& e : keep) {
      if (e != d && Dominated(e, d)) {
        minimal = false;
        break;
      }
    }
    if (minimal) return d;
  }
  return absl::InternalError(absl::StrCat(
      "no value-preserving sub-bundle of ", FormatBundle(x), " within cap ",
      v.cap()));
}

PriceGrid PriceGrid::Uniform(int num_goods, std::vector<double> levels) {
  PriceGrid grid;
  grid.levels.assign(num_goods, std::move(levels));
  return grid;
}

absl::StatusOr<std::optional<GrossSubstitutesViolation>>
VerifyGrossSubstitutes(const AuctionValuation& v, const PriceGrid& grid) {
  const int m = v.num_goods();
  if (static_cast<int>(grid.levels.size()) != m) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "price grid has %d coordinates, valuation has %d goods",
        grid.levels.size(), m));
  }
  for (const auto& levels : grid.levels) {
    if (levels.empty()) {
      return absl::InvalidArgumentError("price grid has an empty coordinate");
    }
    for (double q : levels) {
      if (!std::isfinite(q) || q < 0) {
        return absl::InvalidArgumentError(
            "price grid levels must be finite and non-negative");
      }
    }
  }
  std::vector<size_t> idx(m, 0);
  PriceVector p(m);
  while (true) {
    for (int j = 0; j < m; ++j) p[j] = grid.levels[j][idx[j]];
    auto demanded = Demand(v, p);
    if (!demanded.ok()) return demanded.status();
    for (const Bundle& x : *demanded) {
      for (int j = 0; j < m; ++j) {
        for (double q : grid.levels[j]) {
          if (q <= p[j]) continue;
          PriceVector raised = p;
          raised[j] = q;
          auto after = Demand(v, raised);
          if (!after.ok()) return after.status();
          const bool covered =
              std::any_of(after->begin(), after->end(), [&](const Bundle& y) {
                for (int k = 0; k < m; ++k) {
                  if (k != j && y[k] < x[k]) return false;
                }
                return true;
              });
          if (!covered) {
            return std::optional<GrossSubstitutesViolation>(
                GrossSubstitutesViolation{p, x, j, q});
          }
        }
      }
    }
    int j = 0;
    while (j < m && ++idx[j] == grid.levels[j].size()) idx[j++] = 0;
    if (j == m) break;
  }
  return std::optional<GrossSubstitutesViolation>();
}

}  // namespace bigmarket
