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

#include "harness/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "json.hpp"

namespace bigmarket::harness {
namespace {

using Json = nlohmann::json;

#define HARNESS_RETURN_IF_ERROR(expr)      \
  do {                                     \
    if (absl::Status s_ = (expr); !s_.ok()) \
      return s_;                           \
  } while (false)

absl::Status FieldError(const std::string& path, absl::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat("field ", path, ": ", message));
}

std::string Child(const std::string& path, absl::string_view key) {
  return path.empty() ? std::string(key) : absl::StrCat(path, ".", key);
}

std::string Index(const std::string& path, size_t i) {
  return absl::StrCat(path, "[", i, "]");
}

absl::Status ExpectObject(const Json& j, const std::string& path,
                          const std::set<std::string>& allowed) {
  if (!j.is_object()) return FieldError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      return FieldError(Child(path, key),
                        absl::StrCat("unknown key (allowed: ",
                                     absl::StrJoin(allowed, ", "), ")"));
    }
  }
  return absl::OkStatus();
}

absl::Status ReadDouble(const Json& j, const std::string& path, double& out) {
  if (!j.is_number()) return FieldError(path, "expected a number");
  out = j.get<double>();
  if (!std::isfinite(out)) return FieldError(path, "must be finite");
  return absl::OkStatus();
}

absl::Status ReadInt(const Json& j, const std::string& path, int64_t& out) {
  if (!j.is_number_integer()) return FieldError(path, "expected an integer");
  out = j.get<int64_t>();
  return absl::OkStatus();
}

// Optional members. Absent keys leave `out` untouched.
absl::Status OptDouble(const Json& obj, const std::string& path,
                       const char* key, double& out, double min,
                       double max = INFINITY, bool min_exclusive = false) {
  if (!obj.contains(key)) return absl::OkStatus();
  const std::string p = Child(path, key);
  HARNESS_RETURN_IF_ERROR(ReadDouble(obj[key], p, out));
  if (out < min || (min_exclusive && out == min) || out > max) {
    return FieldError(p, absl::StrCat("must lie in ", min_exclusive ? "(" : "[",
                                      min, ", ", max, "]"));
  }
  return absl::OkStatus();
}

absl::Status OptDouble(const Json& obj, const std::string& path,
                       const char* key, std::optional<double>& out, double min,
                       double max = INFINITY, bool min_exclusive = false) {
  if (!obj.contains(key)) return absl::OkStatus();
  double value = 0.0;
  HARNESS_RETURN_IF_ERROR(
      OptDouble(obj, path, key, value, min, max, min_exclusive));
  out = value;
  return absl::OkStatus();
}

absl::Status OptInt(const Json& obj, const std::string& path, const char* key,
                    int& out, int64_t min, int64_t max = 1'000'000'000) {
  if (!obj.contains(key)) return absl::OkStatus();
  const std::string p = Child(path, key);
  int64_t value = 0;
  HARNESS_RETURN_IF_ERROR(ReadInt(obj[key], p, value));
  if (value < min || value > max) {
    return FieldError(p, absl::StrCat("must lie in [", min, ", ", max, "]"));
  }
  out = static_cast<int>(value);
  return absl::OkStatus();
}

absl::Status OptString(const Json& obj, const std::string& path,
                       const char* key, std::string& out) {
  if (!obj.contains(key)) return absl::OkStatus();
  if (!obj[key].is_string()) return FieldError(Child(path, key), "expected a string");
  out = obj[key].get<std::string>();
  return absl::OkStatus();
}

absl::Status OptDoubleList(const Json& obj, const std::string& path,
                           const char* key, std::vector<double>& out,
                           double min, double max) {
  if (!obj.contains(key)) return absl::OkStatus();
  const std::string p = Child(path, key);
  const Json& list = obj[key];
  if (!list.is_array() || list.empty()) {
    return FieldError(p, "expected a non-empty array");
  }
  out.clear();
  for (size_t i = 0; i < list.size(); ++i) {
    double v = 0.0;
    HARNESS_RETURN_IF_ERROR(ReadDouble(list[i], Index(p, i), v));
    if (v < min || v > max) {
      return FieldError(Index(p, i),
                        absl::StrCat("must lie in [", min, ", ", max, "]"));
    }
    out.push_back(v);
  }
  return absl::OkStatus();
}

absl::Status ParseValues(const Json& j, const std::string& path,
                         ValueModel& out) {
  HARNESS_RETURN_IF_ERROR(ExpectObject(
      j, path, {"family", "low", "high", "shape", "scale", "weights"}));
  std::string family = "uniform";
  HARNESS_RETURN_IF_ERROR(OptString(j, path, "family", family));
  if (family == "uniform") {
    out.kind = ValueModel::Kind::kUniform;
    HARNESS_RETURN_IF_ERROR(OptDouble(j, path, "low", out.low, 0.0));
    HARNESS_RETURN_IF_ERROR(OptDouble(j, path, "high", out.high, out.low));
  } else if (family == "pareto") {
    out.kind = ValueModel::Kind::kPareto;
    HARNESS_RETURN_IF_ERROR(
        OptDouble(j, path, "shape", out.shape, 1.0, INFINITY, true));
    HARNESS_RETURN_IF_ERROR(
        OptDouble(j, path, "scale", out.scale, 0.0, INFINITY, true));
  } else if (family == "explicit") {
    out.kind = ValueModel::Kind::kExplicit;
    const std::string p = Child(path, "weights");
    if (!j.contains("weights") || !j["weights"].is_array() ||
        j["weights"].empty()) {
      return FieldError(p, "explicit values need a non-empty weights array");
    }
    out.weights.clear();
    for (size_t i = 0; i < j["weights"].size(); ++i) {
      const Json& row = j["weights"][i];
      if (!row.is_array() || row.empty()) {
        return FieldError(Index(p, i), "expected a non-empty array");
      }
      std::vector<double> w;
      for (size_t g = 0; g < row.size(); ++g) {
        double v = 0.0;
        HARNESS_RETURN_IF_ERROR(ReadDouble(row[g], Index(Index(p, i), g), v));
        if (v < 0.0) return FieldError(Index(Index(p, i), g), "must be >= 0");
        w.push_back(v);
      }
      out.weights.push_back(std::move(w));
    }
  } else {
    return FieldError(Child(path, "family"),
                      "expected one of uniform, pareto, explicit");
  }
  return absl::OkStatus();
}

absl::Status ParseMultiplicity(const Json& j, const std::string& path,
                               MultiplicityModel& out) {
  HARNESS_RETURN_IF_ERROR(
      ExpectObject(j, path, {"kind", "trials", "p", "copies"}));
  std::string kind = "binomial";
  HARNESS_RETURN_IF_ERROR(OptString(j, path, "kind", kind));
  if (kind == "binomial") {
    out.kind = MultiplicityModel::Kind::kBinomial;
    if (j.contains("trials")) {
      const Json& t = j["trials"];
      if (t.is_string() && t.get<std::string>() == "N") {
        out.trials.reset();
      } else {
        int trials = 0;
        HARNESS_RETURN_IF_ERROR(OptInt(j, path, "trials", trials, 1, 100000));
        out.trials = trials;
      }
    }
    HARNESS_RETURN_IF_ERROR(OptDouble(j, path, "p", out.p, 0.0, 1.0));
  } else if (kind == "deterministic") {
    out.kind = MultiplicityModel::Kind::kDeterministic;
    const std::string p = Child(path, "copies");
    if (!j.contains("copies") || !j["copies"].is_array() ||
        j["copies"].empty()) {
      return FieldError(p, "deterministic multiplicity needs copies");
    }
    out.copies.clear();
    for (size_t i = 0; i < j["copies"].size(); ++i) {
      int64_t c = 0;
      HARNESS_RETURN_IF_ERROR(ReadInt(j["copies"][i], Index(p, i), c));
      if (c < 0 || c > 100000) return FieldError(Index(p, i), "out of range");
      out.copies.push_back(static_cast<int>(c));
    }
  } else {
    return FieldError(Child(path, "kind"),
                      "expected one of binomial, deterministic");
  }
  return absl::OkStatus();
}

absl::Status ParseSearch(const Json& j, const std::string& path,
                         SearchSettings& out) {
  HARNESS_RETURN_IF_ERROR(
      ExpectObject(j, path, {"restarts", "exhaustive_limit", "max_rounds"}));
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "restarts", out.restarts, 1, 10000));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "exhaustive_limit", out.exhaustive_limit, 0.0, 1e8));
  HARNESS_RETURN_IF_ERROR(
      OptInt(j, path, "max_rounds", out.max_rounds, 1, 100000));
  return absl::OkStatus();
}

absl::Status ParseRegret(const Json& j, const std::string& path,
                         RegretSettings& out) {
  HARNESS_RETURN_IF_ERROR(ExpectObject(j, path, {"rounds", "feedback"}));
  out.enabled = true;
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "rounds", out.rounds, 1, 10'000'000));
  std::string feedback = "full";
  HARNESS_RETURN_IF_ERROR(OptString(j, path, "feedback", feedback));
  if (feedback == "full") {
    out.feedback = Feedback::kFullInformation;
  } else if (feedback == "bandit") {
    out.feedback = Feedback::kBandit;
  } else {
    return FieldError(Child(path, "feedback"), "expected full or bandit");
  }
  return absl::OkStatus();
}

absl::Status ParseAssumptions(const Json& j, const std::string& path,
                              AssumptionOverrides& out) {
  HARNESS_RETURN_IF_ERROR(
      ExpectObject(j, path, {"zeta", "rho_prime", "lambda", "alpha"}));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "zeta", out.zeta, 0.0, INFINITY, true));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "rho_prime", out.rho_prime, 0.0, INFINITY, true));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "lambda", out.lambda, 0.0, 1.0, true));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "alpha", out.alpha, 0.0, INFINITY, true));
  return absl::OkStatus();
}

absl::Status ParseWalrasian(const Json& j, const std::string& path,
                            Scenario& s) {
  WalrasianSettings& w = s.walrasian;
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "goods", w.goods, 1, 4));
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "demand_cap", w.demand_cap, 1, 64));
  if (j.contains("values")) {
    HARNESS_RETURN_IF_ERROR(
        ParseValues(j["values"], Child(path, "values"), w.values));
  }
  if (j.contains("multiplicity")) {
    HARNESS_RETURN_IF_ERROR(ParseMultiplicity(
        j["multiplicity"], Child(path, "multiplicity"), w.multiplicity));
  }
  if (j.contains("rules")) {
    const std::string p = Child(path, "rules");
    if (!j["rules"].is_array() || j["rules"].empty()) {
      return FieldError(p, "expected a non-empty array");
    }
    w.rules.clear();
    for (size_t i = 0; i < j["rules"].size(); ++i) {
      if (!j["rules"][i].is_string()) {
        return FieldError(Index(p, i), "expected a string");
      }
      auto rule = PricingRule::Parse(j["rules"][i].get<std::string>());
      if (!rule.ok()) return FieldError(Index(p, i), rule.status().message());
      w.rules.push_back(*rule);
    }
  }
  HARNESS_RETURN_IF_ERROR(OptDoubleList(j, path, "gammas", w.gammas, 0.0, 10.0));
  HARNESS_RETURN_IF_ERROR(OptDoubleList(j, path, "deltas", w.deltas, 0.0, 1e6));
  if (std::find(w.gammas.begin(), w.gammas.end(), 1.0) == w.gammas.end() ||
      std::find(w.deltas.begin(), w.deltas.end(), 0.0) == w.deltas.end()) {
    return FieldError(Child(path, "gammas"),
                      "the grid must contain truthful bidding (gamma 1, delta 0)");
  }
  if (j.contains("expectation")) {
    const Json& e = j["expectation"];
    const std::string p = Child(path, "expectation");
    HARNESS_RETURN_IF_ERROR(
        ExpectObject(e, p, {"max_exact_atoms", "monte_carlo_draws"}));
    HARNESS_RETURN_IF_ERROR(
        OptDouble(e, p, "max_exact_atoms", w.max_exact_atoms, 1.0, 1e7));
    HARNESS_RETURN_IF_ERROR(
        OptInt(e, p, "monte_carlo_draws", w.monte_carlo_draws, 1, 1'000'000));
  }
  return absl::OkStatus();
}

absl::Status ParseFisher(const Json& j, const std::string& path, Scenario& s) {
  FisherSettings& f = s.fisher;
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "goods", f.goods, 1, 8));
  if (j.contains("utility")) {
    const Json& u = j["utility"];
    const std::string p = Child(path, "utility");
    HARNESS_RETURN_IF_ERROR(ExpectObject(u, p, {"family", "rho", "low", "high"}));
    std::string family = "cobb_douglas";
    HARNESS_RETURN_IF_ERROR(OptString(u, p, "family", family));
    if (family == "linear") {
      f.family = FisherSettings::Family::kLinear;
    } else if (family == "cobb_douglas") {
      f.family = FisherSettings::Family::kCobbDouglas;
    } else if (family == "ces") {
      f.family = FisherSettings::Family::kCes;
    } else if (family == "mixed") {
      f.family = FisherSettings::Family::kMixed;
    } else {
      return FieldError(Child(p, "family"),
                        "expected one of linear, cobb_douglas, ces, mixed");
    }
    HARNESS_RETURN_IF_ERROR(OptDouble(u, p, "rho", f.rho, 0.0, 1.0, true));
    if (f.rho >= 1.0) return FieldError(Child(p, "rho"), "must be below 1");
    HARNESS_RETURN_IF_ERROR(
        OptDouble(u, p, "low", f.weight_low, 0.0, INFINITY, true));
    HARNESS_RETURN_IF_ERROR(OptDouble(u, p, "high", f.weight_high, f.weight_low));
  }
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "budget", f.budget, 0.0, INFINITY, true));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "budget_spread", f.budget_spread, 0.0, 0.99));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "reserve_fraction", f.reserve_fraction, 0.0, 0.25));
  HARNESS_RETURN_IF_ERROR(
      OptDoubleList(j, path, "report_shifts", f.report_shifts, 0.0, 0.99));
  if (s.regret.enabled && !(f.reserve_fraction && *f.reserve_fraction > 0.0)) {
    return FieldError(Child(path, "regret"),
                      "fisher no-regret runs need a positive reserve_fraction");
  }
  return absl::OkStatus();
}

absl::Status ParseProbe(const Json& j, const std::string& path, Scenario& s) {
  ProbeSettings& p = s.probe;
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "goods", p.goods, 1, 4));
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "demand_cap", p.demand_cap, 1, 64));
  HARNESS_RETURN_IF_ERROR(OptInt(j, path, "k", p.k, 0, 16));
  if (j.contains("values")) {
    HARNESS_RETURN_IF_ERROR(
        ParseValues(j["values"], Child(path, "values"), p.values));
  }
  if (j.contains("multiplicity")) {
    HARNESS_RETURN_IF_ERROR(ParseMultiplicity(
        j["multiplicity"], Child(path, "multiplicity"), p.multiplicity));
  }
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "epsilon", p.epsilon, 0.0, INFINITY, true));
  HARNESS_RETURN_IF_ERROR(
      OptDouble(j, path, "cap_u", p.cap_u, 0.0, INFINITY, true));
  if (j.contains("bad_event")) {
    const Json& e = j["bad_event"];
    const std::string q = Child(path, "bad_event");
    HARNESS_RETURN_IF_ERROR(
        ExpectObject(e, q, {"max_exact_atoms", "monte_carlo_draws"}));
    HARNESS_RETURN_IF_ERROR(
        OptDouble(e, q, "max_exact_atoms", p.max_exact_atoms, 1.0, 1e7));
    HARNESS_RETURN_IF_ERROR(
        OptInt(e, q, "monte_carlo_draws", p.monte_carlo_draws, 1, 1'000'000));
  }
  return absl::OkStatus();
}

absl::Status CheckExplicitShape(const ValueModel& values, int goods,
                                const std::vector<int>& sweep,
                                const std::string& path) {
  if (values.kind != ValueModel::Kind::kExplicit) return absl::OkStatus();
  for (size_t i = 0; i < values.weights.size(); ++i) {
    if (static_cast<int>(values.weights[i].size()) != goods) {
      return FieldError(Index(Child(path, "values.weights"), i),
                        absl::StrCat("expected ", goods, " weights"));
    }
  }
  for (int n : sweep) {
    if (n != static_cast<int>(values.weights.size())) {
      return FieldError(Child(path, "sweep"),
                        "explicit values fix N to the number of weight rows");
    }
  }
  return absl::OkStatus();
}

absl::Status CheckCopies(const MultiplicityModel& model, int goods,
                         const std::string& path) {
  if (model.kind == MultiplicityModel::Kind::kDeterministic &&
      static_cast<int>(model.copies.size()) != goods) {
    return FieldError(Child(path, "multiplicity.copies"),
                      absl::StrCat("expected ", goods, " entries"));
  }
  return absl::OkStatus();
}

absl::Status ParseScenario(const Json& j, const std::string& path,
                           Scenario& s) {
  if (!j.is_object()) return FieldError(path, "expected an object");
  if (!j.contains("setting") || !j["setting"].is_string()) {
    return FieldError(Child(path, "setting"),
                      "required: walrasian, fisher or probe");
  }
  const std::string setting = j["setting"].get<std::string>();
  std::set<std::string> allowed = {"id",     "setting", "sweep",
                                   "seeds",  "output",  "search",
                                   "regret", "assumptions"};
  if (setting == "walrasian") {
    s.setting = Setting::kWalrasian;
    allowed.insert({"goods", "demand_cap", "values", "multiplicity", "rules",
                    "gammas", "deltas", "expectation"});
  } else if (setting == "fisher") {
    s.setting = Setting::kFisher;
    allowed.insert({"goods", "utility", "budget", "budget_spread",
                    "reserve_fraction", "report_shifts"});
  } else if (setting == "probe") {
    s.setting = Setting::kProbe;
    allowed.insert({"goods", "demand_cap", "values", "multiplicity", "k",
                    "epsilon", "cap_u", "bad_event"});
  } else {
    return FieldError(Child(path, "setting"),
                      "expected one of walrasian, fisher, probe");
  }
  HARNESS_RETURN_IF_ERROR(ExpectObject(j, path, allowed));

  if (!j.contains("id") || !j["id"].is_string() ||
      j["id"].get<std::string>().empty()) {
    return FieldError(Child(path, "id"), "required non-empty string");
  }
  s.id = j["id"].get<std::string>();
  for (char c : s.id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return FieldError(Child(path, "id"),
                        "may only contain letters, digits, '_' and '-'");
    }
  }
  s.output = s.id + ".csv";
  HARNESS_RETURN_IF_ERROR(OptString(j, path, "output", s.output));

  const std::string sweep_path = Child(path, "sweep");
  if (!j.contains("sweep") || !j["sweep"].is_array() || j["sweep"].empty()) {
    return FieldError(sweep_path, "required non-empty array");
  }
  for (size_t i = 0; i < j["sweep"].size(); ++i) {
    int64_t v = 0;
    HARNESS_RETURN_IF_ERROR(ReadInt(j["sweep"][i], Index(sweep_path, i), v));
    if (v < 1 || v > 4096) {
      return FieldError(Index(sweep_path, i), "must lie in [1, 4096]");
    }
    s.sweep.push_back(static_cast<int>(v));
  }
  const std::string seeds_path = Child(path, "seeds");
  if (!j.contains("seeds") || !j["seeds"].is_array() || j["seeds"].empty()) {
    return FieldError(seeds_path, "required non-empty array");
  }
  for (size_t i = 0; i < j["seeds"].size(); ++i) {
    const Json& v = j["seeds"][i];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
      return FieldError(Index(seeds_path, i), "expected a non-negative integer");
    }
    s.seeds.push_back(v.get<uint64_t>());
  }
  if (j.contains("search")) {
    HARNESS_RETURN_IF_ERROR(
        ParseSearch(j["search"], Child(path, "search"), s.search));
  }
  if (j.contains("regret")) {
    HARNESS_RETURN_IF_ERROR(
        ParseRegret(j["regret"], Child(path, "regret"), s.regret));
  }
  if (j.contains("assumptions")) {
    HARNESS_RETURN_IF_ERROR(ParseAssumptions(
        j["assumptions"], Child(path, "assumptions"), s.assumptions));
  }
  switch (s.setting) {
    case Setting::kWalrasian:
      HARNESS_RETURN_IF_ERROR(ParseWalrasian(j, path, s));
      HARNESS_RETURN_IF_ERROR(CheckExplicitShape(
          s.walrasian.values, s.walrasian.goods, s.sweep, path));
      HARNESS_RETURN_IF_ERROR(
          CheckCopies(s.walrasian.multiplicity, s.walrasian.goods, path));
      break;
    case Setting::kFisher:
      HARNESS_RETURN_IF_ERROR(ParseFisher(j, path, s));
      break;
    case Setting::kProbe:
      HARNESS_RETURN_IF_ERROR(ParseProbe(j, path, s));
      HARNESS_RETURN_IF_ERROR(
          CheckExplicitShape(s.probe.values, s.probe.goods, s.sweep, path));
      HARNESS_RETURN_IF_ERROR(
          CheckCopies(s.probe.multiplicity, s.probe.goods, path));
      break;
  }
  return absl::OkStatus();
}

std::pair<int, int> LineAndColumn(absl::string_view text, size_t byte) {
  int line = 1, column = 1;
  for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string SettingName(Setting setting) {
  switch (setting) {
    case Setting::kWalrasian:
      return "walrasian";
    case Setting::kFisher:
      return "fisher";
    case Setting::kProbe:
      return "probe";
  }
  return "";
}

absl::StatusOr<Config> ParseConfig(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, column] = LineAndColumn(text, e.byte);
    return absl::InvalidArgumentError(
        absl::StrCat("syntax error at line ", line, ", column ", column, ": ",
                     e.what()));
  }
  HARNESS_RETURN_IF_ERROR(
      ExpectObject(root, "$", {"schema_version", "scenarios"}));
  Config config;
  if (!root.contains("schema_version")) {
    return FieldError("schema_version", "required");
  }
  int64_t version = 0;
  HARNESS_RETURN_IF_ERROR(
      ReadInt(root["schema_version"], "schema_version", version));
  if (version != kSchemaVersion) {
    return FieldError("schema_version",
                      absl::StrCat("unsupported version ", version,
                                   ", expected ", kSchemaVersion));
  }
  if (!root.contains("scenarios") || !root["scenarios"].is_array() ||
      root["scenarios"].empty()) {
    return FieldError("scenarios", "required non-empty array");
  }
  std::set<std::string> ids;
  for (size_t i = 0; i < root["scenarios"].size(); ++i) {
    Scenario s;
    const std::string path = Index("scenarios", i);
    HARNESS_RETURN_IF_ERROR(ParseScenario(root["scenarios"][i], path, s));
    if (!ids.insert(s.id).second) {
      return FieldError(Child(path, "id"), "duplicate scenario id");
    }
    config.scenarios.push_back(std::move(s));
  }
  return config;
}

absl::StatusOr<Config> LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

}  // namespace bigmarket::harness
