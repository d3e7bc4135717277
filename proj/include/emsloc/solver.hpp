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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emsloc/formulation.hpp"

namespace emsloc {

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kTimeLimit };

std::string solve_status_name(SolveStatus status);

struct SolverStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

/// A variable assignment plus the audited objective. `values` is parallel
/// to model.variables. The objective is always recomputed from the
/// assignment, never trusted from search bookkeeping.
struct Solution {
  std::vector<std::uint8_t> values;
  Rational objective;
  SolveStatus status = SolveStatus::kInfeasible;
  Rational bound;  // valid upper bound; equals objective when optimal
  SolverStats stats;

  int value_of(const ModelSpec& model, const VarId& id) const;
};

/// Exact depth-first branch-and-bound over z then x; y is decoded, never
/// branched. All arithmetic is rational, so optima are exact. Structure is
/// recovered from the model's constraint tags; models must come from the
/// formulation builders (possibly with epsilon/fix rows added).
/// time_limit_seconds <= 0 means no limit.
Solution solve_exact(const ModelSpec& model, double time_limit_seconds = 0.0);

struct HeuristicConfig {
  std::uint64_t seed = 0;
  /// Maximum number of candidate-move evaluations in local search.
  std::uint64_t budget = 5'000'000;
  /// Optional plan seeding the construction (previous sweep point).
  const Plan* warm_start = nullptr;
};

/// Greedy construction (max marginal gain) plus first-improvement local
/// search over relocate / type-swap / site-pair moves. Deterministic in
/// the seed. Always returns a feasible solution; the reported objective is
/// the exact rational recomputation of the final assignment.
Solution solve_heuristic(const ModelSpec& model, const HeuristicConfig& config);
Solution solve_heuristic(const ModelSpec& model, std::uint64_t seed, std::uint64_t budget);

/// Canonical objective evaluation: dot product in declaration order.
Rational evaluate_objective(const ModelSpec& model, const std::vector<std::uint8_t>& values);

/// Empty when feasible, otherwise a description naming the violated
/// constraint family tag.
std::optional<std::string> find_violation(const ModelSpec& model,
                                          const std::vector<std::uint8_t>& values);

/// Fixed-format MPS with OBJSENSE MAX and BV bounds for every variable.
/// Objective coefficients are written as shortest round-trip decimals.
std::string mps_string(const ModelSpec& model);
void export_mps(const ModelSpec& model, const std::string& path);

/// Reads whitespace-separated "name value" lines; unknown names warn and
/// are ignored; missing variables default to 0. The imported assignment is
/// audited (feasibility plus objective recomputation).
Solution import_solution(const std::string& path, const ModelSpec& model);
Solution parse_solution_text(const std::string& text, const ModelSpec& model);

/// Turns an audited solution into a Plan with coverage rates: per-type
/// rate = covered (q-weighted for probabilistic models) demand of the type
/// divided by its total demand over the full horizon.
Plan decode(const Solution& solution, const Instance& instance, const ModelSpec& model);

}  // namespace emsloc
