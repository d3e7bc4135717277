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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emsloc/pareto.hpp"
#include "emsloc/solver.hpp"

namespace emsloc {

enum class ScenarioId { kS1, kS2, kS3, kS4, kS5 };

std::string scenario_name(ScenarioId id);
ScenarioId scenario_from_name(const std::string& name);

enum class ScenarioModel { kDeterministic, kProbabilistic };

/// The experimental ladder: S1 replays a fixed baseline, S2/S3 re-optimize
/// allocations over the baseline stations (static / multi-period), S4/S5
/// optimize everything (static / multi-period).
struct ScenarioSpec {
  ScenarioId id = ScenarioId::kS1;
  ScenarioModel model_kind = ScenarioModel::kDeterministic;
  FixMode fixes = FixMode::kZAndX;   // meaningful for S1-S3
  bool has_fixes = true;
  bool static_aggregated = false;
  const Plan* baseline = nullptr;

  /// Canonical spec for a scenario id; enforces the fixes/period pairing.
  static ScenarioSpec standard(ScenarioId id, ScenarioModel kind, const Plan* baseline);
};

/// One report row. The objective and rates are always evaluated on the
/// multi-period horizon (static plans replicated), so the denominator is
/// the same total demand in every scenario.
struct ScenarioRow {
  ScenarioId id = ScenarioId::kS1;
  ScenarioModel model_kind = ScenarioModel::kDeterministic;
  std::string instance_fingerprint;
  int stations_installed = 0;
  double solve_seconds = 0.0;
  Rational objective;
  std::vector<Rational> rate_per_type;
  Rational rate_total;
  SolveStatus status = SolveStatus::kInfeasible;
  Plan plan;  // multi-period (replicated for S2/S4)
};

struct ScenarioSolverConfig {
  SolveMethod method = SolveMethod::kExact;
  double time_limit_seconds = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 5'000'000;
};

ScenarioRow run_scenario(const Instance& instance, const ScenarioSpec& spec,
                         const ScenarioSolverConfig& config);

/// Absolute and percentage deltas between scenario pairs, plus the
/// deterministic-vs-probabilistic gap per scenario when both are present.
struct ComparisonEntry {
  std::string label;
  Rational absolute;
  std::optional<double> percent;  // vs the second operand; nullopt on zero base
};

std::vector<ComparisonEntry> compare(const std::vector<ScenarioRow>& rows);

/// CSV columns follow the reporting order: scenario, stations, time,
/// objective, per-type rates, total rate.
std::string scenario_csv(const std::vector<ScenarioRow>& rows, const Instance& instance);

/// Transposed Markdown table, scenarios as columns.
std::string scenario_markdown(const std::vector<ScenarioRow>& rows, const Instance& instance);

std::string comparison_csv(const std::vector<ComparisonEntry>& entries);

}  // namespace emsloc
