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

#ifndef BIGMARKET_MULTIPLICITY_H_
#define BIGMARKET_MULTIPLICITY_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bigmarket/types.h"

namespace bigmarket {

// A multiplicity vector together with its probability.
struct MultiplicityAtom {
  Multiplicity n;
  double probability = 0.0;
};

// Distribution of the multiplicity vector n. All kinds are products of
// independent per-good distributions, so the conditional probability of n_j
// given n_-j equals the marginal.
class MultiplicityDistribution {
 public:
  enum class Kind { kIndependentBinomial, kDeterministic, kProductGeneric };

  static absl::StatusOr<MultiplicityDistribution> IndependentBinomial(
      int num_goods, int trials, double success_probability);
  static absl::StatusOr<MultiplicityDistribution> Deterministic(Multiplicity n);
  // pmfs[j][c] = Pr[n_j = c]; each pmf must sum to 1 within 1e-12.
  static absl::StatusOr<MultiplicityDistribution> ProductGeneric(
      std::vector<std::vector<double>> pmfs);

  Kind kind() const { return kind_; }
  int num_goods() const { return static_cast<int>(pmfs_.size()); }
  // Largest value in the support of n_j.
  int SupportMax(int j) const { return static_cast<int>(pmfs_[j].size()) - 1; }
  const std::vector<double>& Marginal(int j) const { return pmfs_[j]; }

  // Pr[n_j = count | n_-j]; n_minus_j is ignored for product kinds.
  double Pmf(int j, int count, std::span<const int> n_minus_j = {}) const;

  double Mean(int j) const;
  double StdDev(int j) const;

  // Number of atoms in the joint support.
  double SupportSize() const;

  // Every atom of the joint support in lexicographic order, or nullopt when
  // the support exceeds max_atoms. Zero-probability atoms are skipped.
  std::optional<std::vector<MultiplicityAtom>> Enumerate(
      double max_atoms) const;

  // One draw by inverse-CDF sampling on 53-bit uniforms from `rng`.
  Multiplicity Sample(std::mt19937_64& rng) const;

  std::string DebugString() const;

 private:
  MultiplicityDistribution(Kind kind, std::vector<std::vector<double>> pmfs)
      : kind_(kind), pmfs_(std::move(pmfs)) {}

  Kind kind_;
  std::vector<std::vector<double>> pmfs_;
};

// One reproducible draw for a given seed.
Multiplicity SampleMultiplicity(const MultiplicityDistribution& dist,
                                uint64_t seed);

// F(N) = max_j max_{n_j, n_-j} Pr[n_j | n_-j].
double MaxPointMass(const MultiplicityDistribution& dist);

// Exact binomial pmf table for Binomial(trials, p).
std::vector<double> BinomialPmf(int trials, double p);

// Constants of the large-auction assumptions.
//   zeta       expected single-item value bound
//   rho        SW(OPT) ≥ rho·N
//   rho_prime  largest expected single-item value is at least rho_prime
//   lambda     std-dev slack, Γ(n_j) ≤ (1 - lambda)·μ(n_j), lambda in (0, 1]
//   alpha      μ(n_j) ≥ alpha·N
struct LargeAuctionAssumptions {
  double zeta = 1.0;
  double rho = 1.0;
  double rho_prime = 1.0;
  double lambda = 1.0;
  double alpha = 1.0;

  absl::Status Validate() const;
};

// Chebyshev-derived welfare density rho = λ²α(2λ + λ²)/(1 + λ)²·ρ'.
double WelfareDensity(const LargeAuctionAssumptions& a);

// rho·N with rho from WelfareDensity.
double WelfareLowerBound(const LargeAuctionAssumptions& a, int num_bidders);

}  // namespace bigmarket

#endif  // BIGMARKET_MULTIPLICITY_H_
