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

#ifndef BIGMARKET_VALUATION_H_
#define BIGMARKET_VALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/types.h"

namespace bigmarket {

// One XOR atom of an explicit valuation: any bundle that contains `bundle`
// is worth at least `value`.
struct XorAtom {
  Bundle bundle;
  double value = 0.0;
};

// A valuation over multisets of indivisible goods.
//
// UnitDemand and KDemand are weighted uniform-matroid ranks: the value of a
// bundle is the sum of its min(|x|, cap) largest item weights. They are gross
// substitutes by construction. Explicit valuations are XOR bids,
// v(x) = max { value(a) : bundle(a) ≼ x }, which are monotone but need not be
// gross substitutes; they exist for counterexamples and small oracles.
class AuctionValuation {
 public:
  enum class Kind { kUnitDemand, kKDemand, kExplicit };

  // Explicit valuations are limited to this many goods and this many items
  // per atom so that every operation can enumerate exactly.
  static constexpr int kMaxExplicitGoods = 4;
  static constexpr int kMaxExplicitItems = 6;

  static absl::StatusOr<AuctionValuation> UnitDemand(
      std::vector<double> weights);
  static absl::StatusOr<AuctionValuation> KDemand(std::vector<double> weights,
                                                  int cap);
  static absl::StatusOr<AuctionValuation> Explicit(int num_goods,
                                                   std::vector<XorAtom> atoms);

  Kind kind() const { return kind_; }
  int num_goods() const { return num_goods_; }
  // Largest number of items that can carry value (k-bounded demand).
  int cap() const { return cap_; }
  bool is_matroid_rank() const { return kind_ != Kind::kExplicit; }
  // Item weights; empty for explicit valuations.
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<XorAtom>& atoms() const { return atoms_; }

  // Largest value of a single item, max_s v(s).
  double MaxItemValue() const;

  // Value of x without the dimension check.
  double ValueOf(std::span<const int> x) const;

  // A bid b with b(x) ≤ gamma·v(x) + delta for every x, of the same family.
  // Matroid weights become gamma·w + delta/cap; atom values become
  // gamma·value + delta.
  AuctionValuation Scaled(double gamma, double delta) const;

  std::string DebugString() const;

 private:
  AuctionValuation(Kind kind, int num_goods, int cap,
                   std::vector<double> weights, std::vector<XorAtom> atoms)
      : kind_(kind),
        num_goods_(num_goods),
        cap_(cap),
        weights_(std::move(weights)),
        atoms_(std::move(atoms)) {
    SortGoods();
  }

  void SortGoods();

  Kind kind_;
  int num_goods_;
  int cap_;
  std::vector<double> weights_;
  std::vector<XorAtom> atoms_;
  // Goods by decreasing weight, ties by index (matroid-rank kinds only).
  std::vector<int> order_;
};

// v(x). Rejects a bundle of the wrong length or with negative entries.
absl::StatusOr<double> Value(const AuctionValuation& v, std::span<const int> x);

// Quasi-linear utility v(x) - p·x. Goods with zero copies in x contribute no
// payment even at an infinite price.
double QuasiLinearUtility(const AuctionValuation& v, std::span<const int> x,
                          std::span<const double> p);

// Payment p·x over the goods actually held.
double Payment(std::span<const int> x, std::span<const double> p);

// All utility-maximizing bundles with at most cap() items, within
// kValueTolerance of the maximum, in lexicographically ascending order.
absl::StatusOr<std::vector<Bundle>> Demand(const AuctionValuation& v,
                                           std::span<const double> p);

// Best achievable utility at prices p.
absl::StatusOr<double> IndirectUtility(const AuctionValuation& v,
                                       std::span<const double> p);

// A ≼-minimal sub-bundle d ≼ x with v(d) = v(x); the lexicographically
// smallest such bundle when several exist.
absl::StatusOr<Bundle> MinimalBundle(const AuctionValuation& v,
                                     std::span<const int> x);

// Per-coordinate price levels; the grid is their Cartesian product.
struct PriceGrid {
  std::vector<std::vector<double>> levels;

  static PriceGrid Uniform(int num_goods, std::vector<double> levels);
};

struct GrossSubstitutesViolation {
  PriceVector prices;
  Bundle demanded;
  int good = 0;
  double raised_price = 0.0;
};

// Exhaustive check of the gross-substitutes condition on a finite grid. For
// every grid price p, every demanded x at p, every good j and every grid level
// q_j > p_j, some bundle y demanded at (q_j, p_-j) must satisfy y_k ≥ x_k for
// all k ≠ j. Returns the first violation found, or nullopt if none.
absl::StatusOr<std::optional<GrossSubstitutesViolation>>
VerifyGrossSubstitutes(const AuctionValuation& v, const PriceGrid& grid);

}  // namespace bigmarket

#endif  // BIGMARKET_VALUATION_H_
