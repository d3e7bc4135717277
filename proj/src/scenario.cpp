// Copyright 2026 The emsloc Authors
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

#include "emsloc/scenario.hpp"

#include <cstdio>
#include <map>

#include "emsloc/errors.hpp"

namespace emsloc {

namespace {

std::string percent(const Rational& rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * rational_to_double(rate));
  return buf;
}

ModelKind pick_kind(ScenarioModel model, bool static_aggregated) {
  if (model == ScenarioModel::kDeterministic)
    return static_aggregated ? ModelKind::kFleetStatic : ModelKind::kFleetICt;
  return static_aggregated ? ModelKind::kLrMexclpStatic : ModelKind::kLrMexclpICt;
}

// Multi-period evaluation of a feasible multi-period plan: fix z and x,
// decode the optimal y. This is the common yardstick for every scenario.
Plan evaluate_multi(const Instance& instance, ScenarioModel model, const Plan& plan,
                    const CoverageSets& sets, const ReliabilityTable& table) {
  ModelSpec spec = build_model(pick_kind(model, false), instance, sets, table);
  spec = fix_variables(std::move(spec), plan, FixMode::kZAndX);
  Solution solution = solve_exact(spec);
  if (solution.status == SolveStatus::kInfeasible)
    throw ValidationError("scenario evaluation: plan is infeasible for the instance");
  return decode(solution, instance, spec);
}

}  // namespace

std::string scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::kS1: return "S1";
    case ScenarioId::kS2: return "S2";
    case ScenarioId::kS3: return "S3";
    case ScenarioId::kS4: return "S4";
    case ScenarioId::kS5: return "S5";
  }
  throw Error("unreachable scenario id");
}

ScenarioId scenario_from_name(const std::string& name) {
  if (name == "S1" || name == "s1") return ScenarioId::kS1;
  if (name == "S2" || name == "s2") return ScenarioId::kS2;
  if (name == "S3" || name == "s3") return ScenarioId::kS3;
  if (name == "S4" || name == "s4") return ScenarioId::kS4;
  if (name == "S5" || name == "s5") return ScenarioId::kS5;
  throw ValidationError("unknown scenario '" + name + "' (expected S1..S5)");
}

ScenarioSpec ScenarioSpec::standard(ScenarioId id, ScenarioModel kind, const Plan* baseline) {
  ScenarioSpec spec;
  spec.id = id;
  spec.model_kind = kind;
  spec.baseline = baseline;
  switch (id) {
    case ScenarioId::kS1:
      spec.fixes = FixMode::kZAndX;
      spec.has_fixes = true;
      spec.static_aggregated = false;
      break;
    case ScenarioId::kS2:
      spec.fixes = FixMode::kZOnly;
      spec.has_fixes = true;
      spec.static_aggregated = true;
      break;
    case ScenarioId::kS3:
      spec.fixes = FixMode::kZOnly;
      spec.has_fixes = true;
      spec.static_aggregated = false;
      break;
    case ScenarioId::kS4:
      spec.has_fixes = false;
      spec.static_aggregated = true;
      break;
    case ScenarioId::kS5:
      spec.has_fixes = false;
      spec.static_aggregated = false;
      break;
  }
  return spec;
}

ScenarioRow run_scenario(const Instance& instance, const ScenarioSpec& spec,
                         const ScenarioSolverConfig& config) {
  if (spec.has_fixes && spec.baseline == nullptr)
    throw ValidationError("scenario " + scenario_name(spec.id) + " requires a baseline plan");
  if (spec.has_fixes) spec.baseline->validate_against(instance);
  if (spec.id == ScenarioId::kS1 && spec.baseline->num_periods != instance.num_periods)
    throw ValidationError("scenario S1 baseline must cover every period of the instance");

  CoverageSets sets = build_coverage_sets(instance);
  ReliabilityTable table;
  if (spec.model_kind == ScenarioModel::kProbabilistic)
    table = build_reliability_table(instance, sets);

  ModelSpec model = build_model(pick_kind(spec.model_kind, spec.static_aggregated), instance,
                                sets, table);
  if (spec.has_fixes) model = fix_variables(std::move(model), *spec.baseline, spec.fixes);

  Solution solution;
  if (config.method == SolveMethod::kExact) {
    solution = solve_exact(model, config.time_limit_seconds);
  } else {
    HeuristicConfig heuristic;
    heuristic.seed = config.seed;
    heuristic.budget = config.budget;
    solution = solve_heuristic(model, heuristic);
  }
  if (solution.status == SolveStatus::kInfeasible)
    throw ValidationError("scenario " + scenario_name(spec.id) +
                          ": baseline is infeasible for the model");

  Plan solved = decode(solution, instance, model);
  Plan multi = spec.static_aggregated
                   ? evaluate_multi(instance, spec.model_kind,
                                    solved.replicate(instance.num_periods), sets, table)
                   : solved;

  ScenarioRow row;
  row.id = spec.id;
  row.model_kind = spec.model_kind;
  row.instance_fingerprint = instance.fingerprint();
  row.stations_installed = multi.stations_used();
  row.solve_seconds = solution.stats.seconds;
  row.objective = multi.objective;
  row.rate_per_type = multi.coverage_rate_per_type;
  row.rate_total = multi.coverage_rate_total;
  row.status = solution.status;
  row.plan = std::move(multi);
  return row;
}

std::vector<ComparisonEntry> compare(const std::vector<ScenarioRow>& rows) {
  for (size_t n = 1; n < rows.size(); ++n)
    if (rows[n].instance_fingerprint != rows[0].instance_fingerprint)
      throw ValidationError("compare: reports come from different instances");

  std::map<std::pair<ScenarioModel, ScenarioId>, const ScenarioRow*> by_key;
  for (const ScenarioRow& row : rows) by_key[{row.model_kind, row.id}] = &row;

  auto kind_label = [](ScenarioModel kind) {
    return kind == ScenarioModel::kDeterministic ? "deterministic" : "probabilistic";
  };

  std::vector<ComparisonEntry> entries;
  auto add_delta = [&](const std::string& label, const Rational& a, const Rational& b) {
    ComparisonEntry entry;
    entry.label = label;
    entry.absolute = a - b;
    if (b != 0)
      entry.percent = 100.0 * rational_to_double(entry.absolute) / rational_to_double(b);
    entries.push_back(std::move(entry));
  };

  const std::pair<ScenarioId, ScenarioId> pairs[] = {
      {ScenarioId::kS2, ScenarioId::kS1},
      {ScenarioId::kS3, ScenarioId::kS2},
      {ScenarioId::kS5, ScenarioId::kS4},
      {ScenarioId::kS4, ScenarioId::kS2},
  };
  for (ScenarioModel kind : {ScenarioModel::kDeterministic, ScenarioModel::kProbabilistic})
    for (const auto& [a, b] : pairs) {
      auto it_a = by_key.find({kind, a});
      auto it_b = by_key.find({kind, b});
      if (it_a == by_key.end() || it_b == by_key.end()) continue;
      add_delta(std::string(kind_label(kind)) + " " + scenario_name(a) + " vs " + scenario_name(b),
                it_a->second->objective, it_b->second->objective);
    }

  for (ScenarioId id : {ScenarioId::kS1, ScenarioId::kS2, ScenarioId::kS3, ScenarioId::kS4,
                        ScenarioId::kS5}) {
    auto det = by_key.find({ScenarioModel::kDeterministic, id});
    auto prob = by_key.find({ScenarioModel::kProbabilistic, id});
    if (det == by_key.end() || prob == by_key.end()) continue;
    add_delta(scenario_name(id) + " deterministic vs probabilistic", det->second->objective,
              prob->second->objective);
  }
  return entries;
}

std::string scenario_csv(const std::vector<ScenarioRow>& rows, const Instance& instance) {
  std::string out = "scenario,model,stations,time_s,objective";
  for (const AmbulanceType& type : instance.ambulance_types) out += ",rate_" + type.label;
  out += ",rate_total,status\n";
  for (const ScenarioRow& row : rows) {
    out += scenario_name(row.id) + ",";
    out += row.model_kind == ScenarioModel::kDeterministic ? "deterministic," : "probabilistic,";
    out += std::to_string(row.stations_installed) + ",";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", row.solve_seconds);
    out += std::string(buf) + ",";
    out += shortest_double_string(rational_to_double(row.objective));
    for (const Rational& rate : row.rate_per_type)
      out += "," + shortest_double_string(rational_to_double(rate));
    out += "," + shortest_double_string(rational_to_double(row.rate_total));
    out += "," + solve_status_name(row.status) + "\n";
  }
  return out;
}

std::string scenario_markdown(const std::vector<ScenarioRow>& rows, const Instance& instance) {
  std::string out = "| Results |";
  for (const ScenarioRow& row : rows) out += " " + scenario_name(row.id) + " |";
  out += "\n|---|";
  for (size_t n = 0; n < rows.size(); ++n) out += "---|";
  out += "\n| Stations installed |";
  for (const ScenarioRow& row : rows) out += " " + std::to_string(row.stations_installed) + " |";
  out += "\n| Computational time (s) |";
  for (const ScenarioRow& row : rows) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.2f |", row.solve_seconds);
    out += buf;
  }
  out += "\n| Objective function value |";
  for (const ScenarioRow& row : rows)
    out += " " + shortest_double_string(rational_to_double(row.objective)) + " |";
  for (int u = 0; u < instance.num_types(); ++u) {
    out += "\n| Coverage rate " + instance.ambulance_types[u].label + " |";
    for (const ScenarioRow& row : rows) out += " " + percent(row.rate_per_type[u]) + " |";
  }
  out += "\n| Total coverage rate |";
  for (const ScenarioRow& row : rows) out += " " + percent(row.rate_total) + " |";
  out += "\n";
  return out;
}

std::string comparison_csv(const std::vector<ComparisonEntry>& entries) {
  std::string out = "comparison,absolute_delta,percent_delta\n";
  for (const ComparisonEntry& entry : entries) {
    out += entry.label + "," + shortest_double_string(rational_to_double(entry.absolute)) + ",";
    if (entry.percent.has_value()) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", *entry.percent);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace emsloc
