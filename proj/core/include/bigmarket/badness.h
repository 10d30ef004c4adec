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

#ifndef BIGMARKET_BADNESS_H_
#define BIGMARKET_BADNESS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "bigmarket/multiplicity.h"
#include "bigmarket/types.h"
#include "bigmarket/walrasian.h"

namespace bigmarket {

// C(a, b) as a double, with C(a, 0) = 1 for every a and C(a, b) = 0 when
// a < 0, b < 0 or a < b. Exact for results below 2^53.
double Binomial(int64_t a, int64_t b);

// m·C(k + m, m): the number of (k, ε, U)-bad vectors a single (ε, U)-bad
// vector can induce, times m.
double LambdaMK(int num_goods, int k);

struct BadnessBounds {
  double lambda_mk = 0.0;  // LambdaMK(m, k)
  double y = 0.0;          // m·F·2m·C(k + 1 + m, m)
  // ⌈log2(1/Y) - log2 log2(1/Y)⌉ when Y < 1/2, otherwise 0.
  int c_prime = 0;
};

BadnessBounds ComputeBadnessBounds(int num_goods, int k, double max_point_mass);

struct BadnessParams {
  double epsilon = 1.0;
  double cap_u = 1.0;
  int k = 0;
  // Largest n_j scanned per slice.
  int search_box = 0;

  absl::Status Validate() const;
};

// N·cap + k + 2: beyond N·cap copies of a good no additional copy changes
// any allocation, so English prices are constant in n_j from there on; the
// extra k covers vectors whose dominated neighbours lie inside that range.
int DefaultSearchBox(int num_bidders, int demand_cap, int k);

// sqrt(m·F·Λ(m, k + 1)/(k + 1))·U, the scale used by the square-root bound.
double DefaultEpsilon(int num_goods, int k, double max_point_mass,
                      double cap_u);

// English prices of a fixed bid profile, memoized by multiplicity vector.
// Not thread-safe.
class PriceOracle {
 public:
  explicit PriceOracle(BidProfile bids) : bids_(std::move(bids)) {}

  const BidProfile& bids() const { return bids_; }
  absl::StatusOr<PriceVector> English(std::span<const int> n);
  size_t cache_size() const { return cache_.size(); }

 private:
  BidProfile bids_;
  std::map<Multiplicity, PriceVector> cache_;
};

// dist^U(Eng(n), Eng(n + e_j)) > ε.
absl::StatusOr<bool> IsEpsBad(PriceOracle& oracle, std::span<const int> n,
                              int j, const BadnessParams& params);

// Some n' ≼ n with Σ(n - n') ≤ k is (ε, U)-bad for good j.
absl::StatusOr<bool> IsKEpsBad(PriceOracle& oracle, std::span<const int> n,
                               int j, const BadnessParams& params);

struct SliceCounts {
  int eps_bad = 0;
  int k_eps_bad = 0;
  double eps_bound = 0.0;    // (m/ε)·U
  double k_eps_bound = 0.0;  // (m/ε)·U·C(k + m, m)
  int scanned = 0;
};

// Scans n_j = 0..search_box with the other coordinates fixed to those of
// `n`, counting (ε, U)-bad and (k, ε, U)-bad points for good j. A count above
// its bound is returned as an internal error: the counting argument cannot
// fail for gross-substitutes bids, so a violation means a solver bug.
absl::StatusOr<SliceCounts> CountBadSlice(PriceOracle& oracle,
                                          std::span<const int> n, int j,
                                          const BadnessParams& params);

struct BadEventReport {
  double probability = 0.0;
  // Upper end of the 99% Wilson interval in Monte Carlo mode; equal to
  // `probability` when exact.
  double upper = 0.0;
  double bound = 0.0;  // m·F·[U/ε·Λ(m, k) + k + 1]
  bool exact = true;
  int samples = 0;
  bool holds = true;
};

struct BadEventOptions {
  double max_exact_atoms = 1e4;
  int monte_carlo_draws = 2000;
  uint64_t seed = 0;
};

// Probability that n is (k, ε, U)-bad for some good or has min_j n_j ≤ k,
// exact over the support when small enough, otherwise by Monte Carlo.
absl::StatusOr<BadEventReport> BadEventProbability(
    PriceOracle& oracle, const MultiplicityDistribution& dist,
    const BadnessParams& params, const BadEventOptions& options = {});

// Evaluates both sides of
//   C(m + n - 1, n) = Σ_{i=0..n} C(m + i - 2, i)
//   Σ_{n=0..k} C(m + n - 1, n) = Σ_{n=0..k} (k - n + 1)·C(m + n - 2, n)
// for every n ≤ k; true iff all equal.
bool BinomialIdentitiesHold(int m, int k);

}  // namespace bigmarket

#endif  // BIGMARKET_BADNESS_H_
