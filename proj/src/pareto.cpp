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

#include "emsloc/pareto.hpp"

#include <algorithm>

#include "emsloc/errors.hpp"

namespace emsloc {

int compute_eps_min(const Instance& instance) {
  std::vector<int> capacities;
  capacities.reserve(instance.sites.size());
  for (const Site& site : instance.sites) capacities.push_back(site.capacity);
  std::sort(capacities.rbegin(), capacities.rend());

  const int fleet = instance.total_fleet();
  int hosted = 0;
  for (int m = 0; m < static_cast<int>(capacities.size()); ++m) {
    hosted += capacities[m];
    if (hosted >= fleet) return m + 1;
  }
  throw ValidationError("compute_eps_min: total capacity cannot host the fleet");
}

std::vector<ParetoPoint> filter_nondominated(const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> sorted;
  for (const ParetoPoint& point : points)
    if (!point.failed) sorted.push_back(point);
  std::stable_sort(sorted.begin(), sorted.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.stations_used != b.stations_used) return a.stations_used < b.stations_used;
    return a.coverage_objective > b.coverage_objective;
  });

  std::vector<ParetoPoint> front;
  for (const ParetoPoint& point : sorted) {
    if (!front.empty()) {
      const ParetoPoint& last = front.back();
      // last has stations <= point's; point survives only with strictly
      // more coverage at strictly more stations.
      if (point.coverage_objective <= last.coverage_objective) continue;
      if (point.stations_used == last.stations_used) continue;
    }
    front.push_back(point);
  }
  return front;
}

ParetoFront sweep(const Instance& instance, ModelKind kind, int eps_min, int eps_max,
                  const SweepConfig& config) {
  if (eps_min > eps_max) throw ValidationError("sweep: eps_min must be <= eps_max");
  if (eps_min < 0) throw ValidationError("sweep: eps_min must be >= 0");

  CoverageSets sets = build_coverage_sets(instance);
  ReliabilityTable table;
  if (model_kind_is_probabilistic(kind)) table = build_reliability_table(instance, sets);
  ModelSpec base = build_model(kind, instance, sets, table);

  if (!config.mandatory_sites.empty()) {
    Plan mandatory = Plan::empty(instance, base.dims.num_periods);
    for (int j : config.mandatory_sites) {
      if (j < 0 || j >= instance.num_sites())
        throw ValidationError("sweep: mandatory site " + std::to_string(j) + " does not exist");
      mandatory.opened.insert(j);
    }
    base = fix_variables(std::move(base), mandatory, FixMode::kOpenOnly);
  }

  ParetoFront front;
  front.model_name = base.name;
  front.instance_fingerprint = base.instance_fingerprint;

  Plan previous_plan;
  bool have_previous = false;
  for (int eps = eps_min; eps <= eps_max; ++eps) {
    ModelSpec model = add_epsilon_constraint(base, eps);
    ParetoPoint point;
    point.epsilon = eps;
    try {
      Solution solution;
      if (config.method == SolveMethod::kExact) {
        solution = solve_exact(model, config.time_limit_seconds);
      } else {
        HeuristicConfig heuristic;
        heuristic.seed = config.seed;
        heuristic.budget = config.budget;
        if (config.warm_start && have_previous) heuristic.warm_start = &previous_plan;
        solution = solve_heuristic(model, heuristic);
      }
      point.status = solution.status;
      point.solve_seconds = solution.stats.seconds;
      if (solution.status == SolveStatus::kInfeasible) {
        point.failed = true;
        point.error = "infeasible";
      } else {
        point.plan = decode(solution, instance, model);
        point.stations_used = point.plan.stations_used();
        point.coverage_objective = solution.objective;
        if (config.method == SolveMethod::kHeuristic) {
          previous_plan = point.plan;
          have_previous = true;
        }
      }
    } catch (const Error& err) {
      point.failed = true;
      point.error = err.what();
    }
    front.raw.push_back(std::move(point));
  }

  front.points = filter_nondominated(front.raw);
  return front;
}

std::optional<int> knee_epsilon(const ParetoFront& front, double threshold) {
  const std::vector<ParetoPoint>& points = front.points;
  if (points.size() < 2) return std::nullopt;
  // First point after which every per-station increment stays below the
  // threshold.
  for (size_t n = 0; n + 1 < points.size(); ++n) {
    bool flat_tail = true;
    for (size_t m = n; m + 1 < points.size(); ++m) {
      double gain = rational_to_double(points[m + 1].coverage_objective) -
                    rational_to_double(points[m].coverage_objective);
      int added = points[m + 1].stations_used - points[m].stations_used;
      if (added <= 0) continue;
      if (gain / added >= threshold) {
        flat_tail = false;
        break;
      }
    }
    if (flat_tail) return points[n].epsilon;
  }
  return points.back().epsilon;
}

std::string front_csv(const ParetoFront& front, const Instance& instance,
                      const std::vector<ParetoPoint>& points) {
  std::string out = "epsilon,stations_used,objective,coverage_rate_total";
  for (const AmbulanceType& type : instance.ambulance_types)
    out += ",coverage_rate_" + type.label;
  out += ",status\n";
  for (const ParetoPoint& point : points) {
    out += std::to_string(point.epsilon) + ",";
    if (point.failed) {
      // stations, objective, total and per-type rates stay empty
      out += ",,";
      for (int u = 0; u < instance.num_types(); ++u) out += ",";
      out += ",failed:" + point.error + "\n";
      continue;
    }
    out += std::to_string(point.stations_used) + ",";
    out += shortest_double_string(rational_to_double(point.coverage_objective)) + ",";
    out += shortest_double_string(rational_to_double(point.plan.coverage_rate_total));
    for (int u = 0; u < instance.num_types(); ++u)
      out += "," + shortest_double_string(rational_to_double(point.plan.coverage_rate_per_type[u]));
    out += "," + solve_status_name(point.status) + "\n";
  }
  return out;
}

}  // namespace emsloc
