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

#include "emsloc/solver.hpp"

namespace emsloc {

/// One epsilon-constraint solve. stations_used counts z actually opened,
/// which may be below epsilon.
struct ParetoPoint {
  int epsilon = 0;
  int stations_used = 0;
  Rational coverage_objective;
  Plan plan;
  SolveStatus status = SolveStatus::kInfeasible;
  double solve_seconds = 0.0;
  bool failed = false;  // solver threw; point kept for diagnosis
  std::string error;
};

/// Non-dominated staircase plus the raw per-epsilon points for diagnosis.
struct ParetoFront {
  std::string model_name;
  std::string instance_fingerprint;
  std::vector<ParetoPoint> points;  // filtered, ordered by stations_used
  std::vector<ParetoPoint> raw;     // one per epsilon in sweep order
};

enum class SolveMethod { kExact, kHeuristic };

struct SweepConfig {
  SolveMethod method = SolveMethod::kExact;
  double time_limit_seconds = 0.0;  // per point; <= 0 unlimited
  std::uint64_t seed = 0;
  std::uint64_t budget = 5'000'000;
  /// Previous point's plan seeds the next heuristic solve.
  bool warm_start = true;
  /// Sites forced open in every solve (the paper pins its operations
  /// center); applied via fix_variables.
  std::vector<int> mandatory_sites;
};

/// Least station count able to host the whole fleet simultaneously: the
/// smallest m such that the m largest capacities sum to at least
/// sum_u P_u.
int compute_eps_min(const Instance& instance);

/// Keeps a point unless another uses no more stations and covers at least
/// as much, one strictly. Result ordered by stations_used, a strictly
/// increasing staircase in both coordinates.
std::vector<ParetoPoint> filter_nondominated(const std::vector<ParetoPoint>& points);

/// One solve per integer epsilon in [eps_min, eps_max]. Solver errors are
/// recorded on the point and do not abort the sweep.
ParetoFront sweep(const Instance& instance, ModelKind kind, int eps_min, int eps_max,
                  const SweepConfig& config);

/// Smallest epsilon after which the marginal objective gain per added
/// station stays below `threshold` for the rest of the front. Returns
/// nullopt for fronts with fewer than two points.
std::optional<int> knee_epsilon(const ParetoFront& front, double threshold);

/// Columns: epsilon, stations_used, objective, coverage_rate_total,
/// per-type rates, status.
std::string front_csv(const ParetoFront& front, const Instance& instance,
                      const std::vector<ParetoPoint>& points);

}  // namespace emsloc
