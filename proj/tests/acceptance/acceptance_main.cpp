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

// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>

#include "emsloc/pareto.hpp"
#include "emsloc/scenario.hpp"
#include "emsloc/solver.hpp"
#include "support/mps_reader.hpp"
#include "support/oracle.hpp"
#include "support/testgen.hpp"

using namespace emsloc;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Built {
  Instance instance;
  CoverageSets sets;
  ReliabilityTable table;
};

Built prepare(Instance instance) {
  Built built{std::move(instance), {}, {}};
  built.sets = build_coverage_sets(built.instance);
  built.table = build_reliability_table(built.instance, built.sets);
  return built;
}

// 1. Exact B&B equals exhaustive enumeration on >= 200 random instances.
void criterion_oracle_equivalence() {
  auto start = Clock::now();
  std::mt19937_64 rng(2024);
  const int rounds = 200;
  int mismatches = 0;
  for (int round = 0; round < rounds; ++round) {
    Built built = prepare(testgen::random_oracle_instance(rng));
    ModelKind kind;
    switch (rng() % 4) {
      case 0: kind = ModelKind::kFleetICt; break;
      case 1: kind = ModelKind::kLrMexclpICt; break;
      case 2: kind = ModelKind::kFleetStatic; break;
      default: kind = ModelKind::kLrMexclpStatic; break;
    }
    ModelSpec model = build_model(kind, built.instance, built.sets, built.table);
    if (rng() % 2 == 0)
      model = add_epsilon_constraint(std::move(model),
                                     static_cast<int>(rng() % (built.instance.num_sites() + 1)));
    Solution solution = solve_exact(model);
    auto expected = oracle::StructuredOracle(model).solve();
    if (!expected.has_value() || solution.status != SolveStatus::kOptimal ||
        solution.objective != *expected)
      ++mismatches;
  }
  double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d instances, %d mismatches, %.1fs (budget 300s)", rounds, mismatches, elapsed);
  report("criterion-1 oracle-equivalence", mismatches == 0 && elapsed <= 300.0, detail);
}

// 2. q = 1 - b^k hand cases plus bounds on 1e6 random draws with clamping.
void criterion_reliability_formula() {
  bool ok = reliability(Rational(1) / 2, 2) == Rational(3) / 4 &&
            reliability(Rational(1) / 2, 1) == Rational(1) / 2 &&
            reliability(Rational(18) / 10, 3) == 0;
  std::mt19937_64 rng(7);
  const int draws = 1'000'000;
  int violations = 0;
  for (int n = 0; n < draws && ok; ++n) {
    Rational b = Rational(static_cast<long>(rng() % 2001)) / 1000;  // [0, 2], hits b > 1
    int k = 1 + static_cast<int>(rng() % 8);
    Rational q = reliability(b, k);
    if (q < 0 || q > 1) ++violations;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "hand cases %s, %d draws, %d bound violations",
                ok ? "exact" : "WRONG", draws, violations);
  report("criterion-2 reliability-formula", ok && violations == 0, detail);
}

// 3. Exact sweep objectives are nondecreasing in epsilon.
void criterion_eps_monotonicity() {
  std::mt19937_64 rng(31);
  int violations = 0, instances = 0;
  for (int round = 0; round < 25; ++round) {
    testgen::OracleFamilyParams params;
    params.max_points = 10;
    params.max_sites = 6;
    Instance instance = testgen::random_oracle_instance(rng, params);
    ModelKind kind = round % 2 == 0 ? ModelKind::kFleetICt : ModelKind::kLrMexclpICt;
    SweepConfig config;
    ParetoFront front = sweep(instance, kind, 0, instance.num_sites(), config);
    ++instances;
    for (size_t n = 1; n < front.raw.size(); ++n) {
      if (front.raw[n].failed || front.raw[n - 1].failed) {
        ++violations;
        continue;
      }
      if (front.raw[n].coverage_objective < front.raw[n - 1].coverage_objective) ++violations;
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d instances swept, %d violations", instances,
                violations);
  report("criterion-3 eps-monotonicity", violations == 0, detail);
}

// 4. Fleet-hosting bound: P = {7, 21}, C == 2 gives 14.
void criterion_eps_min() {
  Instance instance;
  instance.num_periods = 1;
  instance.k_max = 1;
  instance.ambulance_types = {{0, "ALS", 7, Rational(10)}, {1, "BLS", 21, Rational(8)}};
  for (int j = 0; j < 20; ++j) instance.sites.push_back({j, 2});
  DemandPoint point;
  point.id = 0;
  point.demand = {{Rational(1)}, {Rational(1)}};
  point.service_time_demand = {{Rational(0)}, {Rational(0)}};
  instance.demand_points.push_back(point);
  instance.travel_time = Matrix(20, 1);
  instance.demand_to_demand_time = Matrix(1, 1);
  instance.validate();
  int bound = compute_eps_min(instance);
  char detail[80];
  std::snprintf(detail, sizeof(detail), "compute_eps_min = %d (expected 14)", bound);
  report("criterion-4 eps-min", bound == 14, detail);
}

// 5. Relaxation chains under common multi-period evaluation on >= 50
// instances: S1 <= S3 <= S5 and S2 <= S4 <= S5.
void criterion_relaxation_chain() {
  std::mt19937_64 rng(51);
  int violations = 0, checked = 0;
  for (int round = 0; round < 50; ++round) {
    testgen::OracleFamilyParams params;
    params.max_points = 8;
    params.max_sites = 5;
    params.max_periods = 2;
    Instance instance = testgen::random_oracle_instance(rng, params);
    Plan baseline = testgen::random_static_baseline(
        rng, instance, 1 + static_cast<int>(rng() % instance.num_sites()));
    ScenarioModel kind =
        round % 2 == 0 ? ScenarioModel::kDeterministic : ScenarioModel::kProbabilistic;
    ScenarioSolverConfig config;
    Rational objective[6];
    for (ScenarioId id : {ScenarioId::kS1, ScenarioId::kS2, ScenarioId::kS3, ScenarioId::kS4,
                          ScenarioId::kS5}) {
      ScenarioRow row = run_scenario(instance, ScenarioSpec::standard(id, kind, &baseline),
                                     config);
      objective[static_cast<int>(id) + 1] = row.objective;
    }
    ++checked;
    if (!(objective[1] <= objective[3] && objective[3] <= objective[5])) ++violations;
    if (!(objective[2] <= objective[4] && objective[4] <= objective[5])) ++violations;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d instances, %d chain violations", checked, violations);
  report("criterion-5 relaxation-chain", violations == 0, detail);
}

// 6. Two-peak family: obj(S5) > obj(S4) strictly for >= 95% of seeds.
void criterion_relocation_gain() {
  int strict = 0;
  const int seeds = 40;
  ScenarioSolverConfig config;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    Instance instance = testgen::two_peak_instance(seed, 3, 2, 4, 1, 1);
    ScenarioRow s4 = run_scenario(
        instance, ScenarioSpec::standard(ScenarioId::kS4, ScenarioModel::kDeterministic, nullptr),
        config);
    ScenarioRow s5 = run_scenario(
        instance, ScenarioSpec::standard(ScenarioId::kS5, ScenarioModel::kDeterministic, nullptr),
        config);
    if (s5.objective > s4.objective) ++strict;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "strict gain on %d/%d seeds (need >= %d)", strict, seeds,
                (seeds * 95 + 99) / 100);
  report("criterion-6 relocation-gain", strict * 100 >= seeds * 95, detail);
}

// 7. Deterministic objective dominates the probabilistic one.
void criterion_det_dominates_prob() {
  std::mt19937_64 rng(71);
  int violations = 0, checked = 0;
  for (int round = 0; round < 50; ++round) {
    Built built = prepare(testgen::random_oracle_instance(rng));
    ModelSpec det = build_fleet_ict(built.instance, built.sets);
    ModelSpec prob = build_lr_mexclp_ict(built.instance, built.sets, built.table);
    Rational det_opt = solve_exact(det).objective;
    Rational prob_opt = solve_exact(prob).objective;
    ++checked;
    if (det_opt < prob_opt) ++violations;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d instances, %d dominance violations", checked,
                violations);
  report("criterion-7 det-dominates-prob", violations == 0, detail);
}

// 8. Dominance filter equals a quadratic scan on 1e4 random point sets.
void criterion_front_filter() {
  std::mt19937_64 rng(81);
  int mismatches = 0;
  const int sets = 10'000;
  for (int round = 0; round < sets; ++round) {
    std::vector<ParetoPoint> cloud;
    int size = 1 + static_cast<int>(rng() % 24);
    for (int n = 0; n < size; ++n) {
      ParetoPoint point;
      point.epsilon = point.stations_used = static_cast<int>(rng() % 10);
      point.coverage_objective = Rational(static_cast<long>(rng() % 50));
      point.status = SolveStatus::kOptimal;
      cloud.push_back(std::move(point));
    }
    auto fast = filter_nondominated(cloud);

    // Quadratic reference.
    std::vector<ParetoPoint> slow;
    for (size_t a = 0; a < cloud.size(); ++a) {
      bool dominated = false;
      for (size_t b = 0; b < cloud.size() && !dominated; ++b) {
        if (a == b) continue;
        bool leq = cloud[b].stations_used <= cloud[a].stations_used;
        bool geq = cloud[b].coverage_objective >= cloud[a].coverage_objective;
        bool strict = cloud[b].stations_used < cloud[a].stations_used ||
                      cloud[b].coverage_objective > cloud[a].coverage_objective;
        if (leq && geq && strict) dominated = true;
      }
      for (size_t b = 0; b < a && !dominated; ++b)
        if (cloud[b].stations_used == cloud[a].stations_used &&
            cloud[b].coverage_objective == cloud[a].coverage_objective)
          dominated = true;
      if (!dominated) slow.push_back(cloud[a]);
    }
    std::sort(slow.begin(), slow.end(), [](const ParetoPoint& x, const ParetoPoint& y) {
      return x.stations_used < y.stations_used;
    });
    if (fast.size() != slow.size()) {
      ++mismatches;
      continue;
    }
    for (size_t n = 0; n < fast.size(); ++n)
      if (fast[n].stations_used != slow[n].stations_used ||
          fast[n].coverage_objective != slow[n].coverage_objective) {
        ++mismatches;
        break;
      }
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d point sets, %d mismatches", sets, mismatches);
  report("criterion-8 front-filter", mismatches == 0, detail);
}

// 9. MPS round-trip on 100 random models: counts and coefficients exact.
void criterion_mps_round_trip() {
  std::mt19937_64 rng(91);
  int mismatches = 0;
  const int rounds = 100;
  for (int round = 0; round < rounds; ++round) {
    Built built = prepare(testgen::random_oracle_instance(rng));
    ModelSpec model = rng() % 2 == 0
                          ? build_fleet_ict(built.instance, built.sets)
                          : build_lr_mexclp_ict(built.instance, built.sets, built.table);
    if (rng() % 2 == 0) model = add_epsilon_constraint(std::move(model), 3);

    mps_reader::ParsedMps parsed;
    try {
      parsed = mps_reader::parse(mps_string(model));
    } catch (const std::exception&) {
      ++mismatches;
      continue;
    }
    bool ok = parsed.maximize && parsed.num_constraint_rows() == model.constraints.size() &&
              parsed.binary_variables.size() == model.num_vars();
    size_t row_index = 0;
    for (const LinearConstraint& row : model.constraints) {
      char row_name[16];
      std::snprintf(row_name, sizeof(row_name), "R%06zu", row_index);
      for (const auto& [id, coefficient] : row.terms) {
        auto column = parsed.columns.find(id.name());
        if (column == parsed.columns.end() ||
            column->second.count(row_name) == 0 ||
            column->second[row_name] != static_cast<double>(coefficient)) {
          ok = false;
          break;
        }
      }
      if (row.rhs != 0 &&
          (parsed.rhs.count(row_name) == 0 ||
           parsed.rhs[row_name] != static_cast<double>(row.rhs)))
        ok = false;
      ++row_index;
    }
    for (const auto& [id, coefficient] : model.objective) {
      if (coefficient == 0) continue;
      double expected = rational_to_double(coefficient);
      auto column = parsed.columns.find(id.name());
      if (column == parsed.columns.end() || column->second.count("OBJ") == 0 ||
          column->second["OBJ"] != expected)
        ok = false;
    }
    if (!ok) ++mismatches;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d models, %d mismatches", rounds, mismatches);
  report("criterion-9 mps-round-trip", mismatches == 0, detail);
}

// 10. Full paper scale: heuristic sweep over eps in {14, 20, 28} under 10
// minutes, every solution audit-feasible. Also pins the documented size
// bound for the default generated instance file.
void criterion_scale_smoke() {
  auto start = Clock::now();
  GeneratorConfig config;  // defaults: 427 / 1527 / 24, 7 ALS + 21 BLS
  Instance instance = generate_instance(config);
  std::string serialized = serialize_instance(instance);
  bool size_ok = serialized.size() < 32 * 1024 * 1024;

  CoverageSets sets = build_coverage_sets(instance);
  ReliabilityTable table = build_reliability_table(instance, sets);
  ModelSpec base = build_model(ModelKind::kFleetICt, instance, sets, table);

  bool all_feasible = true;
  Plan previous;
  bool have_previous = false;
  for (int eps : {14, 20, 28}) {
    ModelSpec model = add_epsilon_constraint(base, eps);
    HeuristicConfig heuristic;
    heuristic.seed = 1;
    heuristic.budget = 4'000'000;
    if (have_previous) heuristic.warm_start = &previous;
    Solution solution = solve_heuristic(model, heuristic);
    if (find_violation(model, solution.values).has_value()) all_feasible = false;
    try {
      previous = decode(solution, instance, model);
      have_previous = true;
    } catch (const std::exception&) {
      all_feasible = false;
    }
  }
  double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "instance file %.1f MiB (bound 32), sweep+generate %.1fs (budget 600s), %s",
                serialized.size() / 1048576.0, elapsed,
                all_feasible ? "all solutions audit-feasible" : "AUDIT FAILURE");
  report("criterion-10 scale-smoke", size_ok && all_feasible && elapsed <= 600.0, detail);
}

}  // namespace

int main() {
  auto start = Clock::now();
  criterion_oracle_equivalence();
  criterion_reliability_formula();
  criterion_eps_monotonicity();
  criterion_eps_min();
  criterion_relaxation_chain();
  criterion_relocation_gain();
  criterion_det_dominates_prob();
  criterion_front_filter();
  criterion_mps_round_trip();
  criterion_scale_smoke();
  std::printf("%s: %d criterion(s) failed, %.1fs total\n", failures == 0 ? "OK" : "FAILED",
              failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
