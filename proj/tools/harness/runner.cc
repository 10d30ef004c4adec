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

#include "harness/runner.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "bigmarket/auction_game.h"
#include "bigmarket/badness.h"
#include "bigmarket/fisher_game.h"
#include "bigmarket/regret.h"
#include "bigmarket/seed.h"

namespace bigmarket::harness {
namespace {

using Json = nlohmann::json;

constexpr uint64_t kExpectationStream = 0x4558;
constexpr uint64_t kSearchStream = 0x5345;
constexpr uint64_t kRegretStream = 0x5247;
constexpr uint64_t kProbeStream = 0x5052;

std::string Num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.10g", x);
}

// Output of one (sweep point, seed) task.
struct TaskOutput {
  std::vector<std::string> rows;
  std::vector<AssertionOutcome> assertions;
  Json detail = Json::object();
  absl::Status status;

  void Check(const std::string& name, bool ok, const std::string& record) {
    auto it = std::find_if(assertions.begin(), assertions.end(),
                           [&](const auto& a) { return a.name == name; });
    if (it == assertions.end()) {
      assertions.push_back({name, 0, 0, ""});
      it = assertions.end() - 1;
    }
    ++it->checked;
    if (!ok) {
      if (it->failed++ == 0) it->first_failure = record;
    }
  }
};

absl::StatusOr<StrategyGrid> WalrasianGrid(const WalrasianSettings& w) {
  std::vector<BidStrategy> strategies;
  for (double g : w.gammas) {
    for (double d : w.deltas) strategies.push_back({g, d});
  }
  return StrategyGrid::Create(std::move(strategies));
}

EquilibriumSearchOptions SearchOptions(const SearchSettings& s,
                                       uint64_t seed) {
  EquilibriumSearchOptions options;
  options.restarts = s.restarts;
  options.exhaustive_limit = s.exhaustive_limit;
  options.max_rounds = s.max_rounds;
  options.seed = seed;
  return options;
}

void RunWalrasianTask(const Scenario& s, int n, uint64_t seed,
                      TaskOutput& out) {
  const WalrasianSettings& w = s.walrasian;
  auto auction = GenerateAuction(w.goods, w.demand_cap, w.values,
                                 w.multiplicity, n, seed);
  if (!auction.ok()) {
    out.status = auction.status();
    return;
  }
  auto grid = WalrasianGrid(w);
  if (!grid.ok()) {
    out.status = grid.status();
    return;
  }
  ExpectationOptions expectation;
  expectation.max_exact_atoms = w.max_exact_atoms;
  expectation.monte_carlo_draws = w.monte_carlo_draws;
  expectation.seed = DeriveSeed(seed, kExpectationStream, n);
  out.detail["N"] = n;
  out.detail["seed"] = seed;
  out.detail["rules"] = Json::array();
  std::optional<AssumptionAudit> audit;
  for (const PricingRule& rule : w.rules) {
    auto game = AuctionGame::Create(auction->instance, auction->distribution,
                                    rule, {*grid}, expectation);
    if (!game.ok()) {
      out.status = game.status();
      return;
    }
    auto opt = game->ExpectedOptimalWelfare();
    if (!opt.ok()) {
      out.status = opt.status();
      return;
    }
    if (!audit) {
      audit = AuditAssumptions(*auction, w.values, s.assumptions, *opt);
      out.detail["audit"] = AuditToJson(*audit);
    }
    const AuctionPoaBounds bounds = ComputeAuctionPoaBounds(
        w.goods, w.demand_cap, audit->max_point_mass, audit->constants.zeta,
        audit->rho);
    auto search = SearchEquilibria(
        *game, SearchOptions(s.search, DeriveSeed(seed, kSearchStream, n)));
    if (!search.ok()) {
      out.status = search.status();
      return;
    }
    const double threshold =
        audit->all() ? std::max({0.0, bounds.sqrt_bound, bounds.log_bound})
                     : 0.0;
    for (const EquilibriumReport& eq : search->equilibria) {
      out.Check("poa_bound", eq.ratio >= threshold - 1e-12,
                absl::StrFormat("N=%d seed=%d rule=%s profile=[%s] ratio=%.10g "
                                "threshold=%.10g",
                                n, seed, rule.Name(),
                                absl::StrJoin(eq.profile, ","), eq.ratio,
                                threshold));
    }
    Json rule_detail = {{"rule", rule.Name()},
                        {"expected_optimal_welfare", *opt},
                        {"equilibria", search->equilibria.size()},
                        {"exhaustive", search->exhaustive},
                        {"converged_restarts", search->converged_restarts},
                        {"bound_sqrt", bounds.sqrt_bound},
                        {"bound_log", Num(bounds.log_bound)}};
    std::string regret = "NA";
    if (s.regret.enabled) {
      RegretConfig config;
      config.rounds = s.regret.rounds;
      config.feedback = s.regret.feedback;
      config.seed = DeriveSeed(seed, kRegretStream, n);
      auto run = RunNoRegret(*game, config);
      if (!run.ok()) {
        out.status = run.status();
        return;
      }
      regret = Num(run->max_normalized_regret);
      const std::string record = absl::StrFormat(
          "N=%d seed=%d rule=%s regret/chi=%.6g", n, seed, rule.Name(),
          run->max_normalized_regret);
      out.Check("regret_budget", run->regret_within_budget, record);
      double guarantee = -kInfinitePrice;
      if (audit->all()) {
        guarantee = RegretWelfareGuarantee(
            bounds, run->max_normalized_regret, w.demand_cap, w.goods,
            audit->constants.zeta, grid->max_gamma(), grid->max_delta(),
            audit->rho, config.rounds, *opt);
      }
      out.Check("regret_welfare",
                run->average_welfare >= guarantee - 1e-12,
                absl::StrFormat("%s average=%.10g guarantee=%.10g", record,
                                run->average_welfare, guarantee));
      rule_detail["regret"] = {{"average_welfare", run->average_welfare},
                               {"optimal_welfare", run->optimal_welfare},
                               {"max_normalized_regret",
                                run->max_normalized_regret},
                               {"guarantee", Num(guarantee)}};
    }
    out.detail["rules"].push_back(rule_detail);
    const bool found = search->worst >= 0;
    const EquilibriumReport* worst =
        found ? &search->equilibria[search->worst] : nullptr;
    out.rows.push_back(absl::StrJoin(
        std::vector<std::string>{s.id, absl::StrCat(n), absl::StrCat(seed), rule.Name(),
         found ? Num(worst->ratio) : std::string("NA"),
         audit->all() ? Num(bounds.sqrt_bound) : std::string("NA"),
         audit->all() ? Num(bounds.log_bound) : std::string("NA"),
         found ? worst->certification.Label() : std::string("none"), regret},
        ","));
  }
}

void RunFisherTask(const Scenario& s, int largeness, uint64_t seed,
                   TaskOutput& out) {
  const FisherSettings& f = s.fisher;
  auto instance = GenerateFisher(f, largeness, seed);
  if (!instance.ok()) {
    out.status = instance.status();
    return;
  }
  const double l = instance->Largeness();
  const std::string where =
      absl::StrFormat("L=%.6g m=%d seed=%d", l, f.goods, seed);
  auto scaling = AuditScaling(*instance);
  if (!scaling.ok()) {
    out.status = scaling.status();
    return;
  }
  out.Check("consistent_scaling", scaling->consistent, where);
  if (auto pre = CheckReservePrecondition(*instance); !pre.ok()) {
    out.Check("reserve_precondition", false,
              absl::StrCat(where, " ", pre.message()));
    return;
  }
  std::vector<std::vector<FisherUtility>> grids;
  for (const FisherUtility& u : instance->utilities) {
    grids.push_back(ReportGrid(u, f.report_shifts));
  }
  auto game = FisherGame::Create(*instance, std::move(grids));
  if (!game.ok()) {
    out.status = game.status();
    return;
  }
  auto search = SearchFisherEquilibria(
      *game, SearchOptions(s.search, DeriveSeed(seed, kSearchStream, largeness)));
  if (!search.ok()) {
    out.status = search.status();
    return;
  }
  const bool reserves = instance->has_reserves();
  const double bound = reserves ? FisherReservePoaBound(f.goods, l)
                                : FisherPoaBound(f.goods, l);
  for (const FisherEquilibriumReport& eq : search->equilibria) {
    const bool ok = reserves ? eq.ratio_sum >= bound - 1e-12
                             : eq.ratio_gm >= bound - 1e-12 &&
                                   eq.ratio_sum >= bound - 1e-12;
    out.Check("fisher_poa", ok,
              absl::StrFormat("%s profile=[%s] gm=%.10g sum=%.10g bound=%.10g",
                              where, absl::StrJoin(eq.profile, ","),
                              eq.ratio_gm, eq.ratio_sum, bound));
  }
  out.detail = {{"L", l},
                {"buyers", instance->num_buyers()},
                {"seed", seed},
                {"scaling_t", scaling->t},
                {"equilibria", search->equilibria.size()},
                {"exhaustive", search->exhaustive},
                {"converged_restarts", search->converged_restarts},
                {"bound", bound},
                {"stated_reserve_bound",
                 FisherReserveStatedBound(f.goods, l)}};
  if (s.regret.enabled) {
    RegretConfig config;
    config.rounds = s.regret.rounds;
    config.feedback = s.regret.feedback;
    config.seed = DeriveSeed(seed, kRegretStream, largeness);
    auto run = RunNoRegretFisher(*game, config);
    if (!run.ok()) {
      out.status = run.status();
      return;
    }
    const std::string record = absl::StrFormat(
        "%s average=%.10g rhs=%.10g regret/chi=%.6g", where,
        run->average_welfare, run->rhs, run->max_normalized_regret);
    out.Check("regret_budget", run->regret_within_budget, record);
    out.Check("regret_fisher", run->holds, record);
    out.detail["regret"] = {{"average_welfare", run->average_welfare},
                            {"truthful_welfare", run->truthful_welfare},
                            {"lambda", run->lambda},
                            {"max_normalized_regret",
                             run->max_normalized_regret},
                            {"rhs", run->rhs}};
  }
  const int worst = search->worst_sum;
  std::string gm = "NA", sum = "NA", cert = "none";
  if (worst >= 0) {
    gm = Num(search->equilibria[search->worst_gm].ratio_gm);
    sum = Num(search->equilibria[worst].ratio_sum);
    cert = search->equilibria[worst].certification.Label();
  }
  out.rows.push_back(absl::StrJoin(std::vector<std::string>{s.id, Num(l), absl::StrCat(f.goods),
                                    absl::StrCat(seed), gm, sum, Num(bound),
                                    reserves ? "1" : "0", cert},
                                   ","));
}

void RunProbeTask(const Scenario& s, int n, uint64_t seed, TaskOutput& out) {
  const ProbeSettings& p = s.probe;
  auto auction = GenerateAuction(p.goods, p.demand_cap, p.values,
                                 p.multiplicity, n, seed);
  if (!auction.ok()) {
    out.status = auction.status();
    return;
  }
  const double f = MaxPointMass(auction->distribution);
  double max_value = 0.0;
  for (const AuctionValuation& v : auction->instance.valuations) {
    for (double x : v.weights()) max_value = std::max(max_value, x);
  }
  BadnessParams params;
  params.k = p.k;
  params.cap_u = p.cap_u.value_or(max_value);
  params.epsilon =
      p.epsilon.value_or(DefaultEpsilon(p.goods, p.k, f, params.cap_u));
  params.search_box = DefaultSearchBox(n, p.demand_cap, p.k);
  PriceOracle oracle(auction->instance.valuations);
  const Multiplicity base = SampleMultiplicity(
      auction->distribution, DeriveSeed(seed, kProbeStream, n));
  const std::string instance_id = absl::StrFormat("N%d-s%d", n, seed);
  auto row = [&](const std::string& j, const std::string& counts,
                 const std::string& bounds, bool pass) {
    out.rows.push_back(absl::StrJoin(
        std::vector<std::string>{s.id + "/" + instance_id, j, Num(params.epsilon), Num(params.cap_u),
         absl::StrCat(params.k), counts, bounds, pass ? "1" : "0"},
        ","));
  };
  for (int j = 0; j < p.goods; ++j) {
    auto counts = CountBadSlice(oracle, base, j, params);
    const std::string where = absl::StrCat(instance_id, " good ", j);
    if (!counts.ok()) {
      if (counts.status().code() != absl::StatusCode::kInternal) {
        out.status = counts.status();
        return;
      }
      out.Check("bad_slice_counts", false,
                absl::StrCat(where, ": ", counts.status().message()));
      row(absl::StrCat(j), "NA", "NA", false);
      continue;
    }
    out.Check("bad_slice_counts", true, where);
    row(absl::StrCat(j),
        absl::StrCat(counts->eps_bad, ";", counts->k_eps_bad),
        absl::StrCat(Num(counts->eps_bound), ";", Num(counts->k_eps_bound)),
        true);
  }
  BadEventOptions options;
  options.max_exact_atoms = p.max_exact_atoms;
  options.monte_carlo_draws = p.monte_carlo_draws;
  options.seed = DeriveSeed(seed, kProbeStream, n + 1);
  auto event = BadEventProbability(oracle, auction->distribution, params,
                                   options);
  if (!event.ok()) {
    out.status = event.status();
    return;
  }
  out.Check("bad_event_probability", event->holds,
            absl::StrFormat("%s probability=%.6g upper=%.6g bound=%.6g",
                            instance_id, event->probability, event->upper,
                            event->bound));
  row("any", Num(event->exact ? event->probability : event->upper),
      Num(event->bound), event->holds);
  out.detail = {{"instance", instance_id},
                {"max_point_mass", f},
                {"base", base},
                {"search_box", params.search_box},
                {"bad_event_exact", event->exact},
                {"bad_event_probability", event->probability}};
}

}  // namespace

AssumptionAudit AuditAssumptions(const GeneratedAuction& auction,
                                 const ValueModel& values,
                                 const AssumptionOverrides& overrides,
                                 double expected_optimal_welfare) {
  AssumptionAudit a;
  const auto& bidders = auction.instance.valuations;
  const MultiplicityDistribution& dist = auction.distribution;
  const int n = static_cast<int>(bidders.size());
  double max_weight = 0.0, total = 0.0;
  int count = 0;
  a.rho_prime = kInfinitePrice;
  for (const AuctionValuation& v : bidders) {
    double best = 0.0;
    for (double x : v.weights()) {
      best = std::max(best, x);
      total += x;
      ++count;
    }
    max_weight = std::max(max_weight, best);
    a.rho_prime = std::min(a.rho_prime, best);
  }
  a.sample_mean = count > 0 ? total / count : 0.0;
  switch (values.kind) {
    case ValueModel::Kind::kUniform:
      a.zeta = values.high;
      break;
    case ValueModel::Kind::kPareto:
      a.zeta = values.shape * values.scale / (values.shape - 1.0);
      break;
    case ValueModel::Kind::kExplicit:
      a.zeta = max_weight;
      break;
  }
  a.rho = expected_optimal_welfare / n;
  a.alpha = kInfinitePrice;
  double worst_spread = 0.0;
  for (int j = 0; j < dist.num_goods(); ++j) {
    const double mu = dist.Mean(j);
    a.alpha = std::min(a.alpha, mu / n);
    worst_spread = std::max(worst_spread,
                            mu > 0.0 ? dist.StdDev(j) / mu : kInfinitePrice);
  }
  a.lambda = 1.0 - worst_spread;
  a.max_point_mass = MaxPointMass(dist);

  LargeAuctionAssumptions& c = a.constants;
  c.zeta = overrides.zeta.value_or(a.zeta);
  c.rho_prime = overrides.rho_prime.value_or(a.rho_prime);
  c.lambda = overrides.lambda.value_or(std::clamp(a.lambda, 0.0, 1.0));
  c.alpha = overrides.alpha.value_or(a.alpha);
  c.rho = a.rho;
  a.bounded_value = std::isfinite(a.zeta) && a.zeta <= c.zeta * (1.0 + 1e-12);
  a.value_floor = c.rho_prime > 0.0 && a.rho_prime >= c.rho_prime - 1e-12;
  a.large_supply = c.lambda > 0.0 && c.alpha > 0.0 &&
                   a.lambda >= c.lambda - 1e-12 && a.alpha >= c.alpha - 1e-12;
  a.rho_chebyshev = c.lambda > 0.0 ? WelfareDensity(c) : 0.0;
  a.welfare_linear = a.rho > 0.0 && a.rho >= a.rho_chebyshev;
  a.uncertain_supply = a.max_point_mass < 1.0 - 1e-12;
  return a;
}

Json AuditToJson(const AssumptionAudit& a) {
  return {{"zeta", a.zeta},
          {"sample_mean_value", a.sample_mean},
          {"rho", a.rho},
          {"rho_chebyshev", a.rho_chebyshev},
          {"rho_prime", a.rho_prime},
          {"lambda", a.lambda},
          {"alpha", a.alpha},
          {"max_point_mass", a.max_point_mass},
          {"bounded_expected_value", a.bounded_value},
          {"market_welfare", a.welfare_linear},
          {"auction_size", a.large_supply},
          {"value_lower_bound", a.value_floor},
          {"uncertain_supply", a.uncertain_supply},
          {"all_hold", a.all()}};
}

bool ScenarioResult::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const AssertionOutcome& a) { return a.passed(); });
}

std::string CsvHeader(Setting setting) {
  switch (setting) {
    case Setting::kWalrasian:
      return "scenario,N,seed,rule,ratio,bound_sqrt,bound_log,certification,"
             "regret";
    case Setting::kFisher:
      return "scenario,L,m,seed,ratio_gm,ratio_sum,bound,reserves_on,"
             "certification";
    case Setting::kProbe:
      return "instance,j,eps,U,k,counts,bounds,pass";
  }
  return "";
}

absl::StatusOr<ScenarioResult> RunScenario(const Scenario& scenario,
                                           const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<uint64_t> seeds = scenario.seeds;
  if (options.seed_override) seeds = {*options.seed_override};
  struct Task {
    int point;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int point : scenario.sweep) {
    for (uint64_t seed : seeds) tasks.push_back({point, seed});
  }
  std::vector<TaskOutput> outputs(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t = next++; t < tasks.size(); t = next++) {
      switch (scenario.setting) {
        case Setting::kWalrasian:
          RunWalrasianTask(scenario, tasks[t].point, tasks[t].seed, outputs[t]);
          break;
        case Setting::kFisher:
          RunFisherTask(scenario, tasks[t].point, tasks[t].seed, outputs[t]);
          break;
        case Setting::kProbe:
          RunProbeTask(scenario, tasks[t].point, tasks[t].seed, outputs[t]);
          break;
      }
    }
  };
  const int jobs = std::clamp(options.jobs, 1, static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  ScenarioResult result;
  result.id = scenario.id;
  result.setting = scenario.setting;
  result.output = scenario.output;
  result.csv = CsvHeader(scenario.setting) + "\n";
  for (size_t t = 0; t < tasks.size(); ++t) {
    TaskOutput& out = outputs[t];
    if (!out.status.ok()) {
      return absl::Status(
          out.status.code(),
          absl::StrCat("scenario ", scenario.id, ", point ", tasks[t].point,
                       ", seed ", tasks[t].seed, ": ", out.status.message()));
    }
    for (const std::string& row : out.rows) {
      absl::StrAppend(&result.csv, row, "\n");
      ++result.rows;
    }
    for (const AssertionOutcome& a : out.assertions) {
      auto it = std::find_if(result.assertions.begin(), result.assertions.end(),
                             [&](const auto& b) { return b.name == a.name; });
      if (it == result.assertions.end()) {
        result.assertions.push_back({a.name, 0, 0, ""});
        it = result.assertions.end() - 1;
      }
      it->checked += a.checked;
      if (a.failed > 0 && it->failed == 0) it->first_failure = a.first_failure;
      it->failed += a.failed;
    }
    result.details.push_back(std::move(out.detail));
  }
  result.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

Json SummaryJson(const std::vector<ScenarioResult>& results) {
  Json scenarios = Json::array();
  bool passed = true;
  for (const ScenarioResult& r : results) {
    Json assertions = Json::array();
    for (const AssertionOutcome& a : r.assertions) {
      assertions.push_back({{"name", a.name},
                            {"passed", a.passed()},
                            {"checked", a.checked},
                            {"failed", a.failed},
                            {"first_failure", a.first_failure}});
    }
    passed &= r.passed();
    scenarios.push_back({{"id", r.id},
                         {"setting", SettingName(r.setting)},
                         {"csv", r.output},
                         {"rows", r.rows},
                         {"passed", r.passed()},
                         {"wall_time_seconds", r.wall_seconds},
                         {"assertions", assertions},
                         {"details", r.details}});
  }
  return {{"schema_version", kSchemaVersion},
          {"passed", passed},
          {"scenarios", scenarios}};
}

absl::Status WriteResults(const std::vector<ScenarioResult>& results,
                          const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create ", out_dir, ": ", ec.message()));
  }
  auto write = [&](const std::string& name,
                   const std::string& text) -> absl::Status {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream file(path, std::ios::binary);
    file << text;
    if (!file) return absl::UnavailableError(absl::StrCat("cannot write ", path));
    return absl::OkStatus();
  };
  for (const ScenarioResult& r : results) {
    if (auto s = write(r.output, r.csv); !s.ok()) return s;
  }
  return write("summary.json", SummaryJson(results).dump(2) + "\n");
}

}  // namespace bigmarket::harness
