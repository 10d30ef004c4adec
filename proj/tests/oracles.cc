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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"

namespace bigmarket::oracle {
namespace {

constexpr double kTolerance = 1e-9;

// Calls `visit` on every bundle with at most `max_items` items and
// x_j ≤ limit[j].
void ForEachBundle(std::span<const int> limit, int max_items,
                   const std::function<void(const Bundle&)>& visit) {
  Bundle x(limit.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t j, int left) {
    if (j == limit.size()) {
      visit(x);
      return;
    }
    for (int c = 0; c <= std::min(limit[j], left); ++c) {
      x[j] = c;
      rec(j + 1, left - c);
    }
    x[j] = 0;
  };
  rec(0, max_items);
}

double Spend(std::span<const int> x, std::span<const double> p) {
  double total = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 0) total += x[j] * p[j];
  }
  return total;
}

}  // namespace

double DirectValue(const AuctionValuation& v, std::span<const int> x) {
  if (!v.is_matroid_rank()) {
    double best = 0.0;
    for (const XorAtom& atom : v.atoms()) {
      bool inside = true;
      for (size_t j = 0; j < x.size(); ++j) inside &= atom.bundle[j] <= x[j];
      if (inside) best = std::max(best, atom.value);
    }
    return best;
  }
  std::vector<double> items;
  for (size_t j = 0; j < x.size(); ++j) {
    for (int c = 0; c < x[j]; ++c) items.push_back(v.weights()[j]);
  }
  std::sort(items.begin(), items.end(), std::greater<>());
  double total = 0.0;
  for (int t = 0; t < std::min<int>(v.cap(), items.size()); ++t) {
    total += items[t];
  }
  return total;
}

double BruteForceWelfare(const BidProfile& bids, std::span<const int> n) {
  std::vector<int> left(n.begin(), n.end());
  double best = 0.0;
  std::function<void(size_t, double)> rec = [&](size_t i, double acc) {
    if (i == bids.size()) {
      best = std::max(best, acc);
      return;
    }
    const std::vector<int> limit = left;
    ForEachBundle(limit, bids[i].cap(), [&](const Bundle& x) {
      for (size_t j = 0; j < x.size(); ++j) left[j] -= x[j];
      rec(i + 1, acc + DirectValue(bids[i], x));
      for (size_t j = 0; j < x.size(); ++j) left[j] += x[j];
    });
  };
  rec(0, 0.0);
  return best;
}

std::string BruteForceWalrasianFailure(const BidProfile& bids,
                                       std::span<const int> n,
                                       std::span<const double> prices,
                                       const Allocation& allocation) {
  const size_t m = n.size();
  for (size_t j = 0; j < m; ++j) {
    int sold = 0;
    for (const Bundle& x : allocation) sold += x[j];
    if (sold > n[j]) {
      return absl::StrFormat("good %d oversold: %d > %d", j, sold, n[j]);
    }
    if (prices[j] > kTolerance && sold < n[j]) {
      return absl::StrFormat("good %d priced at %g but %d of %d unsold", j,
                             prices[j], n[j] - sold, n[j]);
    }
  }
  for (size_t i = 0; i < bids.size(); ++i) {
    const double held =
        DirectValue(bids[i], allocation[i]) - Spend(allocation[i], prices);
    double best = -std::numeric_limits<double>::infinity();
    const std::vector<int> unbounded(m, bids[i].cap());
    ForEachBundle(unbounded, bids[i].cap(), [&](const Bundle& y) {
      best = std::max(best, DirectValue(bids[i], y) - Spend(y, prices));
    });
    if (held < best - kTolerance) {
      return absl::StrFormat("bidder %d holds utility %.12g < demand %.12g",
                             i, held, best);
    }
  }
  return "";
}

double LogObjective(std::span<const double> budgets,
                    std::span<const FisherUtility> utilities,
                    const std::vector<std::vector<double>>& x) {
  double total = 0.0;
  for (size_t i = 0; i < budgets.size(); ++i) {
    const FisherUtility& u = utilities[i];
    const auto& w = u.weights();
    double value = 0.0;
    switch (u.family()) {
      case FisherUtility::Family::kLinear:
        for (size_t j = 0; j < w.size(); ++j) value += w[j] * x[i][j];
        break;
      case FisherUtility::Family::kCobbDouglas: {
        double log_value = 0.0;
        for (size_t j = 0; j < w.size(); ++j) {
          if (w[j] > 0) log_value += w[j] * std::log(x[i][j]);
        }
        value = std::exp(log_value);
        break;
      }
      case FisherUtility::Family::kCes: {
        for (size_t j = 0; j < w.size(); ++j) {
          value += w[j] * std::pow(x[i][j], u.rho());
        }
        value = std::pow(value, 1.0 / u.rho());
        break;
      }
    }
    value *= u.scale();
    if (!(value > 0)) return -std::numeric_limits<double>::infinity();
    total += budgets[i] * std::log(value);
  }
  return total;
}

std::vector<std::vector<double>> GridEisenbergGale(
    std::span<const double> budgets, std::span<const FisherUtility> utilities,
    std::span<const double> reserves, double min_step) {
  const int buyers = static_cast<int>(budgets.size());
  const int m = utilities[0].num_goods();
  const int rows = buyers + (reserves.empty() ? 0 : 1);
  auto f = [&](const std::vector<std::vector<double>>& x) {
    double value = LogObjective(budgets, utilities, x);
    if (!reserves.empty()) {
      for (int j = 0; j < m; ++j) value += reserves[j] * x[buyers][j];
    }
    return value;
  };
  std::vector<std::vector<double>> x(rows, std::vector<double>(m, 1.0 / rows));

  // Coarse grid: every split of each good into tenths, chosen good by good
  // while the others stay fixed, repeated a few times.
  constexpr int kTenths = 10;
  std::vector<std::vector<int>> splits;
  std::vector<int> split(rows, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rows - 1) {
      split[i] = left;
      splits.push_back(split);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      split[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, kTenths);
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int j = 0; j < m; ++j) {
      double best = f(x);
      std::vector<double> column(rows);
      for (int i = 0; i < rows; ++i) column[i] = x[i][j];
      for (const auto& s : splits) {
        for (int i = 0; i < rows; ++i) x[i][j] = s[i] / double{kTenths};
        const double value = f(x);
        if (value > best) {
          best = value;
          for (int i = 0; i < rows; ++i) column[i] = x[i][j];
        }
      }
      for (int i = 0; i < rows; ++i) x[i][j] = column[i];
    }
  }

  // Pattern search over pairwise transfers.
  double current = f(x);
  for (double step = 0.05; step >= min_step; step /= 2) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int j = 0; j < m; ++j) {
        for (int a = 0; a < rows; ++a) {
          for (int b = 0; b < rows; ++b) {
            if (a == b) continue;
            const double moved = std::min(step, x[a][j]);
            if (moved <= 0) continue;
            x[a][j] -= moved;
            x[b][j] += moved;
            const double value = f(x);
            if (value > current) {
              current = value;
              improved = true;
            } else {
              x[a][j] += moved;
              x[b][j] -= moved;
            }
          }
        }
      }
    }
  }
  return x;
}

double DyadicWeight(std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, 8)(rng) / 8.0;
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

AuctionValuation RandomMatroidValuation(std::mt19937_64& rng, int m,
                                        int max_cap, bool dyadic) {
  std::vector<double> w(m);
  for (double& x : w) x = dyadic ? DyadicWeight(rng) : Uniform(rng, 0, 1);
  const int cap = std::uniform_int_distribution<int>(1, max_cap)(rng);
  auto v = cap == 1 ? AuctionValuation::UnitDemand(std::move(w))
                    : AuctionValuation::KDemand(std::move(w), cap);
  return *std::move(v);
}

BidProfile RandomMatroidProfile(std::mt19937_64& rng, int num_bidders, int m,
                                int max_cap, bool dyadic) {
  BidProfile bids;
  for (int i = 0; i < num_bidders; ++i) {
    bids.push_back(RandomMatroidValuation(rng, m, max_cap, dyadic));
  }
  return bids;
}

Multiplicity RandomMultiplicity(std::mt19937_64& rng, int m, int lo, int hi) {
  Multiplicity n(m);
  for (int& c : n) c = std::uniform_int_distribution<int>(lo, hi)(rng);
  return n;
}

}  // namespace bigmarket::oracle
