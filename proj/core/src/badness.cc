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

#include "bigmarket/badness.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace bigmarket {
namespace {

constexpr double kZ99 = 2.5758293035489004;

double WilsonUpper(int successes, int trials) {
  if (trials == 0) return 1.0;
  const double n = trials;
  const double phat = successes / n;
  const double z2 = kZ99 * kZ99;
  const double center = phat + z2 / (2 * n);
  const double spread =
      kZ99 * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
  return std::min(1.0, (center + spread) / (1 + z2 / n));
}

absl::Status CheckGood(std::span<const int> n, int j) {
  if (j < 0 || j >= static_cast<int>(n.size())) {
    return absl::InvalidArgumentError(
        absl::StrFormat("good index %d out of range for %d goods", j,
                        n.size()));
  }
  return absl::OkStatus();
}

// True when n is (k, ε, U)-bad for some good or some n_j ≤ k.
absl::StatusOr<bool> BadEvent(PriceOracle& oracle, std::span<const int> n,
                              const BadnessParams& params) {
  for (int c : n) {
    if (c <= params.k) return true;
  }
  for (int j = 0; j < static_cast<int>(n.size()); ++j) {
    auto bad = IsKEpsBad(oracle, n, j, params);
    if (!bad.ok()) return bad.status();
    if (*bad) return true;
  }
  return false;
}

}  // namespace

double Binomial(int64_t a, int64_t b) {
  if (b == 0) return 1.0;
  if (a < 0 || b < 0 || a < b) return 0.0;
  b = std::min(b, a - b);
  double out = 1.0;
  for (int64_t t = 1; t <= b; ++t) out = out * (a - b + t) / t;
  return std::round(out);
}

double LambdaMK(int num_goods, int k) {
  return num_goods * Binomial(k + num_goods, num_goods);
}

BadnessBounds ComputeBadnessBounds(int num_goods, int k,
                                   double max_point_mass) {
  BadnessBounds b;
  b.lambda_mk = LambdaMK(num_goods, k);
  b.y = num_goods * max_point_mass *
        (2.0 * num_goods * Binomial(k + 1 + num_goods, num_goods));
  if (b.y < 0.5) {
    const double l = std::log2(1.0 / b.y);
    b.c_prime = static_cast<int>(std::ceil(l - std::log2(l)));
  }
  return b;
}

absl::Status BadnessParams::Validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (!(cap_u > 0) || !std::isfinite(cap_u)) {
    return absl::InvalidArgumentError(
        absl::StrCat("U must be positive, got ", cap_u));
  }
  if (k < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("k must be non-negative, got ", k));
  }
  if (search_box < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("search box must be non-negative, got ", search_box));
  }
  return absl::OkStatus();
}

int DefaultSearchBox(int num_bidders, int demand_cap, int k) {
  return num_bidders * demand_cap + k + 2;
}

double DefaultEpsilon(int num_goods, int k, double max_point_mass,
                      double cap_u) {
  return std::sqrt(num_goods * max_point_mass * LambdaMK(num_goods, k + 1) /
                   (k + 1)) *
         cap_u;
}

absl::StatusOr<PriceVector> PriceOracle::English(std::span<const int> n) {
  Multiplicity key(n.begin(), n.end());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto p = EnglishPrices(bids_, n);
  if (!p.ok()) return p.status();
  cache_.emplace(std::move(key), *p);
  return p;
}

absl::StatusOr<bool> IsEpsBad(PriceOracle& oracle, std::span<const int> n,
                              int j, const BadnessParams& params) {
  if (auto s = CheckGood(n, j); !s.ok()) return s;
  auto base = oracle.English(n);
  if (!base.ok()) return base.status();
  Multiplicity more(n.begin(), n.end());
  ++more[j];
  auto after = oracle.English(more);
  if (!after.ok()) return after.status();
  return DistU(*base, *after, params.cap_u) > params.epsilon;
}

absl::StatusOr<bool> IsKEpsBad(PriceOracle& oracle, std::span<const int> n,
                               int j, const BadnessParams& params) {
  if (auto s = CheckGood(n, j); !s.ok()) return s;
  Multiplicity shifted(n.size());
  for (const Bundle& deficit :
       EnumerateBundles(static_cast<int>(n.size()), params.k, n)) {
    for (size_t h = 0; h < n.size(); ++h) shifted[h] = n[h] - deficit[h];
    auto bad = IsEpsBad(oracle, shifted, j, params);
    if (!bad.ok()) return bad.status();
    if (*bad) return true;
  }
  return false;
}

absl::StatusOr<SliceCounts> CountBadSlice(PriceOracle& oracle,
                                          std::span<const int> n, int j,
                                          const BadnessParams& params) {
  if (auto s = params.Validate(); !s.ok()) return s;
  if (auto s = CheckGood(n, j); !s.ok()) return s;
  const int m = static_cast<int>(n.size());
  SliceCounts counts;
  counts.eps_bound = m / params.epsilon * params.cap_u;
  counts.k_eps_bound = counts.eps_bound * Binomial(params.k + m, m);
  Multiplicity point(n.begin(), n.end());
  for (int c = 0; c <= params.search_box; ++c) {
    point[j] = c;
    auto eps_bad = IsEpsBad(oracle, point, j, params);
    if (!eps_bad.ok()) return eps_bad.status();
    auto k_bad = IsKEpsBad(oracle, point, j, params);
    if (!k_bad.ok()) return k_bad.status();
    counts.eps_bad += *eps_bad;
    counts.k_eps_bad += *k_bad;
    ++counts.scanned;
  }
  if (counts.eps_bad > counts.eps_bound + 1e-9 ||
      counts.k_eps_bad > counts.k_eps_bound + 1e-9) {
    return absl::InternalError(absl::StrFormat(
        "bad-vector count exceeds its bound on the slice through %s, good %d: "
        "%d > %.6g or %d > %.6g",
        FormatBundle(n), j, counts.eps_bad, counts.eps_bound,
        counts.k_eps_bad, counts.k_eps_bound));
  }
  return counts;
}

absl::StatusOr<BadEventReport> BadEventProbability(
    PriceOracle& oracle, const MultiplicityDistribution& dist,
    const BadnessParams& params, const BadEventOptions& options) {
  if (auto s = params.Validate(); !s.ok()) return s;
  const int m = dist.num_goods();
  BadEventReport report;
  report.bound = m * MaxPointMass(dist) *
                 (params.cap_u / params.epsilon * LambdaMK(m, params.k) +
                  params.k + 1);
  if (auto atoms = dist.Enumerate(options.max_exact_atoms)) {
    double probability = 0.0;
    for (const MultiplicityAtom& atom : *atoms) {
      auto bad = BadEvent(oracle, atom.n, params);
      if (!bad.ok()) return bad.status();
      if (*bad) probability += atom.probability;
    }
    report.probability = probability;
    report.upper = probability;
    report.exact = true;
    report.samples = static_cast<int>(atoms->size());
    report.holds = probability <= report.bound + 1e-12;
    return report;
  }
  std::mt19937_64 rng(options.seed);
  int hits = 0;
  for (int s = 0; s < options.monte_carlo_draws; ++s) {
    auto bad = BadEvent(oracle, dist.Sample(rng), params);
    if (!bad.ok()) return bad.status();
    hits += *bad;
  }
  report.exact = false;
  report.samples = options.monte_carlo_draws;
  report.probability = static_cast<double>(hits) / options.monte_carlo_draws;
  report.upper = WilsonUpper(hits, options.monte_carlo_draws);
  report.holds = report.upper <= report.bound;
  return report;
}

bool BinomialIdentitiesHold(int m, int k) {
  for (int n = 0; n <= k; ++n) {
    double right = 0.0;
    for (int i = 0; i <= n; ++i) right += Binomial(m + i - 2, i);
    if (Binomial(m + n - 1, n) != right) return false;
  }
  double left = 0.0;
  double right = 0.0;
  for (int n = 0; n <= k; ++n) {
    left += Binomial(m + n - 1, n);
    right += (k - n + 1) * Binomial(m + n - 2, n);
  }
  return left == right;
}

}  // namespace bigmarket
