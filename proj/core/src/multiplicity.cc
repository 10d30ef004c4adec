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

#include "bigmarket/multiplicity.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace bigmarket {
namespace {

absl::Status CheckPmf(const std::vector<double>& pmf, int j) {
  if (pmf.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("pmf of good ", j, " is empty"));
  }
  double total = 0.0;
  for (double q : pmf) {
    if (!std::isfinite(q) || q < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("pmf of good ", j, " has an invalid entry ", q));
    }
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrFormat("pmf of good %d sums to %.15g", j, total));
  }
  return absl::OkStatus();
}

double UniformDraw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> BinomialPmf(int trials, double p) {
  std::vector<double> pmf(trials + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[trials] = 1.0;
    return pmf;
  }
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_n = std::lgamma(trials + 1.0);
  for (int c = 0; c <= trials; ++c) {
    if (trials <= 50) {
      // Coefficients below 2^53 are exact in double arithmetic.
      double coefficient = 1.0;
      for (int t = 1; t <= c; ++t) {
        coefficient = coefficient * (trials - c + t) / t;
      }
      pmf[c] = coefficient * std::pow(p, c) * std::pow(1.0 - p, trials - c);
    } else {
      pmf[c] = std::exp(log_n - std::lgamma(c + 1.0) -
                        std::lgamma(trials - c + 1.0) + c * log_p +
                        (trials - c) * log_q);
    }
  }
  if (trials > 50) {
    double total = 0.0;
    for (double q : pmf) total += q;
    for (double& q : pmf) q /= total;
  }
  return pmf;
}

absl::StatusOr<MultiplicityDistribution>
MultiplicityDistribution::IndependentBinomial(int num_goods, int trials,
                                              double success_probability) {
  if (num_goods < 1) {
    return absl::InvalidArgumentError("need at least one good");
  }
  if (trials < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("binomial trials must be non-negative, got ", trials));
  }
  if (!(success_probability >= 0.0 && success_probability <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "success probability must lie in [0, 1], got ", success_probability));
  }
  return MultiplicityDistribution(
      Kind::kIndependentBinomial,
      std::vector<std::vector<double>>(
          num_goods, BinomialPmf(trials, success_probability)));
}

absl::StatusOr<MultiplicityDistribution>
MultiplicityDistribution::Deterministic(Multiplicity n) {
  if (n.empty()) return absl::InvalidArgumentError("need at least one good");
  std::vector<std::vector<double>> pmfs;
  for (int c : n) {
    if (c < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative multiplicity in ", FormatBundle(n)));
    }
    std::vector<double> pmf(c + 1, 0.0);
    pmf[c] = 1.0;
    pmfs.push_back(std::move(pmf));
  }
  return MultiplicityDistribution(Kind::kDeterministic, std::move(pmfs));
}

absl::StatusOr<MultiplicityDistribution>
MultiplicityDistribution::ProductGeneric(std::vector<std::vector<double>> pmfs) {
  if (pmfs.empty()) return absl::InvalidArgumentError("need at least one good");
  for (size_t j = 0; j < pmfs.size(); ++j) {
    if (auto s = CheckPmf(pmfs[j], static_cast<int>(j)); !s.ok()) return s;
  }
  return MultiplicityDistribution(Kind::kProductGeneric, std::move(pmfs));
}

double MultiplicityDistribution::Pmf(int j, int count,
                                     std::span<const int> /*n_minus_j*/) const {
  if (j < 0 || j >= num_goods() || count < 0 ||
      count >= static_cast<int>(pmfs_[j].size())) {
    return 0.0;
  }
  return pmfs_[j][count];
}

double MultiplicityDistribution::Mean(int j) const {
  double mean = 0.0;
  for (size_t c = 0; c < pmfs_[j].size(); ++c) mean += c * pmfs_[j][c];
  return mean;
}

double MultiplicityDistribution::StdDev(int j) const {
  const double mean = Mean(j);
  double var = 0.0;
  for (size_t c = 0; c < pmfs_[j].size(); ++c) {
    var += pmfs_[j][c] * (c - mean) * (c - mean);
  }
  return std::sqrt(var);
}

double MultiplicityDistribution::SupportSize() const {
  double size = 1.0;
  for (const auto& pmf : pmfs_) {
    size *= std::count_if(pmf.begin(), pmf.end(),
                          [](double q) { return q > 0.0; });
  }
  return size;
}

std::optional<std::vector<MultiplicityAtom>>
MultiplicityDistribution::Enumerate(double max_atoms) const {
  if (SupportSize() > max_atoms) return std::nullopt;
  const int m = num_goods();
  std::vector<std::vector<int>> support(m);
  for (int j = 0; j < m; ++j) {
    for (size_t c = 0; c < pmfs_[j].size(); ++c) {
      if (pmfs_[j][c] > 0.0) support[j].push_back(static_cast<int>(c));
    }
  }
  std::vector<MultiplicityAtom> atoms;
  std::vector<size_t> idx(m, 0);
  while (true) {
    MultiplicityAtom atom;
    atom.n.resize(m);
    atom.probability = 1.0;
    for (int j = 0; j < m; ++j) {
      atom.n[j] = support[j][idx[j]];
      atom.probability *= pmfs_[j][atom.n[j]];
    }
    atoms.push_back(std::move(atom));
    // Last good varies fastest, giving lexicographic order.
    int j = m - 1;
    while (j >= 0 && ++idx[j] == support[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return atoms;
}

Multiplicity MultiplicityDistribution::Sample(std::mt19937_64& rng) const {
  Multiplicity n(num_goods());
  for (int j = 0; j < num_goods(); ++j) {
    const double u = UniformDraw(rng);
    const auto& pmf = pmfs_[j];
    double cumulative = 0.0;
    int last_positive = 0;
    n[j] = -1;
    for (size_t c = 0; c < pmf.size(); ++c) {
      if (pmf[c] <= 0.0) continue;
      last_positive = static_cast<int>(c);
      cumulative += pmf[c];
      if (u < cumulative) {
        n[j] = static_cast<int>(c);
        break;
      }
    }
    if (n[j] < 0) n[j] = last_positive;
  }
  return n;
}

std::string MultiplicityDistribution::DebugString() const {
  switch (kind_) {
    case Kind::kIndependentBinomial:
      return absl::StrFormat("IndependentBinomial(m=%d, trials=%d, p=%g)",
                             num_goods(), SupportMax(0), Mean(0) /
                                 std::max(1, SupportMax(0)));
    case Kind::kDeterministic: {
      Multiplicity n(num_goods());
      for (int j = 0; j < num_goods(); ++j) n[j] = SupportMax(j);
      return absl::StrCat("Deterministic", FormatBundle(n));
    }
    case Kind::kProductGeneric:
      return absl::StrFormat("ProductGeneric(m=%d)", num_goods());
  }
  return "";
}

Multiplicity SampleMultiplicity(const MultiplicityDistribution& dist,
                                uint64_t seed) {
  std::mt19937_64 rng(seed);
  return dist.Sample(rng);
}

double MaxPointMass(const MultiplicityDistribution& dist) {
  double best = 0.0;
  for (int j = 0; j < dist.num_goods(); ++j) {
    for (double q : dist.Marginal(j)) best = std::max(best, q);
  }
  return best;
}

absl::Status LargeAuctionAssumptions::Validate() const {
  const double values[] = {zeta, rho, rho_prime, lambda, alpha};
  const char* names[] = {"zeta", "rho", "rho_prime", "lambda", "alpha"};
  for (int t = 0; t < 5; ++t) {
    if (!std::isfinite(values[t]) || values[t] <= 0) {
      return absl::InvalidArgumentError(
          absl::StrCat(names[t], " must be positive, got ", values[t]));
    }
  }
  if (lambda > 1.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda must lie in (0, 1], got ", lambda));
  }
  return absl::OkStatus();
}

double WelfareDensity(const LargeAuctionAssumptions& a) {
  const double l = a.lambda;
  return l * l * a.alpha * (2 * l + l * l) / ((1 + l) * (1 + l)) * a.rho_prime;
}

double WelfareLowerBound(const LargeAuctionAssumptions& a, int num_bidders) {
  return WelfareDensity(a) * num_bidders;
}

}  // namespace bigmarket
