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

#ifndef BIGMARKET_TYPES_H_
#define BIGMARKET_TYPES_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace bigmarket {

// Copies of each good held by one bidder (auction setting).
using Bundle = std::vector<int>;

// Per-good prices. Entries are non-negative; a Dutch price for a good with
// zero copies is kInfinitePrice.
using PriceVector = std::vector<double>;

// Copies of each good on sale.
using Multiplicity = std::vector<int>;

inline constexpr double kInfinitePrice = std::numeric_limits<double>::infinity();

// Absolute tolerance used when comparing welfare and utility values.
inline constexpr double kValueTolerance = 1e-9;

inline int BundleSize(std::span<const int> x) {
  int total = 0;
  for (int c : x) total += c;
  return total;
}

// x ≼ y componentwise.
inline bool Dominated(std::span<const int> x, std::span<const int> y) {
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j] > y[j]) return false;
  }
  return true;
}

inline bool IsZero(std::span<const int> x) {
  for (int c : x) {
    if (c != 0) return false;
  }
  return true;
}

std::string FormatBundle(std::span<const int> x);
std::string FormatPrices(std::span<const double> p);

// All bundles over `num_goods` goods with at most `max_items` items in total,
// bounded componentwise by `limit` when it is non-empty. Lexicographically
// ascending.
std::vector<Bundle> EnumerateBundles(int num_goods, int max_items,
                                     std::span<const int> limit = {});

}  // namespace bigmarket

#endif  // BIGMARKET_TYPES_H_
