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

#include <doctest.h>

#include <map>
#include <random>

#include "emsloc/errors.hpp"
#include "emsloc/formulation.hpp"
#include "support/testgen.hpp"

using namespace emsloc;

namespace {

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

size_t count_tag(const ModelSpec& model, const std::string& tag) {
  size_t count = 0;
  for (const LinearConstraint& row : model.constraints)
    if (row.tag == tag) ++count;
  return count;
}

}  // namespace

TEST_CASE("fleet-ict counts: 1/1/1/1 gives 3 variables and 4 constraints") {
  GeneratorConfig config;
  config.num_demand_points = 1;
  config.num_sites = 1;
  config.num_periods = 1;
  config.ambulance_types = {{"A", 1, Rational(10)}};
  config.k_max = 1;
  Built built = prepare(generate_instance(config));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  CHECK(model.num_vars() == 3);
  CHECK(model.constraints.size() == 4);
  CHECK(count_tag(model, "coverage-link") == 1);
  CHECK(count_tag(model, "fleet-limit") == 1);
  CHECK(count_tag(model, "capacity") == 1);
  CHECK(count_tag(model, "site-link") == 1);
  model.check_well_formed();
}

TEST_CASE("fleet-ict counts: 2/2/2/3 gives 26 variables") {
  GeneratorConfig config;
  config.num_demand_points = 2;
  config.num_sites = 2;
  config.num_periods = 3;
  config.ambulance_types = {{"A", 1, Rational(10)}, {"B", 1, Rational(8)}};
  config.k_max = 1;
  Built built = prepare(generate_instance(config));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  CHECK(model.num_vars() == 26);  // 2 + 12 + 12
}

TEST_CASE("lr-mexclp-ict counts: 1/1/1/1 with k_max 3 gives 1+1+3 variables") {
  GeneratorConfig config;
  config.num_demand_points = 1;
  config.num_sites = 1;
  config.num_periods = 1;
  config.ambulance_types = {{"A", 3, Rational(10)}};
  config.k_max = 3;
  Built built = prepare(generate_instance(config));
  ModelSpec model = build_lr_mexclp_ict(built.instance, built.sets, built.table);
  CHECK(model.num_vars() == 5);
  CHECK(count_tag(model, "server-count") == 1);
  CHECK(count_tag(model, "one-k") == 1);
}

TEST_CASE("model sizes match the closed-form count formulas") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 10; ++round) {
    Built built = prepare(testgen::random_oracle_instance(rng));
    const long long I = built.instance.num_points();
    const long long J = built.instance.num_sites();
    const long long U = built.instance.num_types();
    const long long T = built.instance.num_periods;
    const long long K = built.instance.k_max;

    ModelSpec det = build_fleet_ict(built.instance, built.sets);
    CHECK(static_cast<long long>(det.num_vars()) == J + J * U * T + I * U * T);
    CHECK(static_cast<long long>(det.constraints.size()) ==
          I * U * T + U * T + J * T + J * U * T);

    ModelSpec prob = build_lr_mexclp_ict(built.instance, built.sets, built.table);
    CHECK(static_cast<long long>(prob.num_vars()) == J + J * U * T + I * U * K * T);
    CHECK(static_cast<long long>(prob.constraints.size()) ==
          2 * I * U * T + U * T + J * T + J * U * T);
    det.check_well_formed();
    prob.check_well_formed();
  }
}

TEST_CASE("objective coefficients are exactly d and d*q") {
  std::mt19937_64 rng(42);
  Built built = prepare(testgen::random_oracle_instance(rng));

  ModelSpec det = build_fleet_ict(built.instance, built.sets);
  for (const auto& [id, coefficient] : det.objective)
    CHECK(coefficient == built.instance.demand(id.a, id.u, id.t));

  ModelSpec prob = build_lr_mexclp_ict(built.instance, built.sets, built.table);
  for (const auto& [id, coefficient] : prob.objective)
    CHECK(coefficient ==
          built.instance.demand(id.a, id.u, id.t) * built.table.q(id.a, id.u, id.k, id.t));
}

TEST_CASE("empty coverage set leaves only the y term in its row") {
  Instance instance = parse_instance(R"({
    "num_periods": 1, "k_max": 1,
    "ambulance_types": [{"id": 0, "label": "A", "fleet_size": 1, "response_standard": 2}],
    "sites": [{"id": 0, "capacity": 1}],
    "demand_points": [{"id": 0, "demand": [[3]], "service_time_demand": [[0.1]]}],
    "travel_time": [[9]],
    "demand_to_demand_time": [[0]]
  })");
  Built built = prepare(std::move(instance));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  for (const LinearConstraint& row : model.constraints)
    if (row.tag == "coverage-link") {
      REQUIRE(row.terms.size() == 1);  // just -y >= 0, forcing y = 0
      CHECK(row.terms[0].first.family == VarFamily::kYDet);
      CHECK(row.terms[0].second == -1);
    }
}

TEST_CASE("static builders aggregate demand by summation") {
  std::mt19937_64 rng(43);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec ict = build_fleet_ict(built.instance, built.sets);
  ModelSpec fixed = build_fleet_static(built.instance, built.sets);

  CHECK(fixed.dims.num_periods == 1);
  for (const auto& [id, coefficient] : fixed.objective) {
    Rational expected(0);
    for (int t = 0; t < built.instance.num_periods; ++t)
      expected += built.instance.demand(id.a, id.u, t);
    CHECK(coefficient == expected);
  }

  Rational ict_sum(0), static_sum(0);
  for (const auto& [id, coefficient] : ict.objective) ict_sum += coefficient;
  for (const auto& [id, coefficient] : fixed.objective) static_sum += coefficient;
  CHECK(ict_sum == static_sum);
}

TEST_CASE("static probabilistic coefficients aggregate d*q over periods") {
  std::mt19937_64 rng(44);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec fixed = build_lr_mexclp_static(built.instance, built.sets, built.table);
  for (const auto& [id, coefficient] : fixed.objective) {
    Rational expected(0);
    for (int t = 0; t < built.instance.num_periods; ++t)
      expected += built.instance.demand(id.a, id.u, t) * built.table.q(id.a, id.u, id.k, t);
    CHECK(coefficient == expected);
  }
}

TEST_CASE("single-period instance: static equals multi-period builder") {
  std::mt19937_64 rng(45);
  testgen::OracleFamilyParams params;
  params.max_periods = 1;
  Built built = prepare(testgen::random_oracle_instance(rng, params));
  ModelSpec a = build_fleet_ict(built.instance, built.sets);
  ModelSpec b = build_fleet_static(built.instance, built.sets);
  CHECK(a.variables == b.variables);
  CHECK(a.objective == b.objective);
  REQUIRE(a.constraints.size() == b.constraints.size());
  for (size_t r = 0; r < a.constraints.size(); ++r) {
    CHECK(a.constraints[r].terms == b.constraints[r].terms);
    CHECK(a.constraints[r].rhs == b.constraints[r].rhs);
    CHECK(a.constraints[r].tag == b.constraints[r].tag);
  }
}

TEST_CASE("q == 1 with k_max 1 collapses the probabilistic objective onto the deterministic") {
  std::mt19937_64 rng(46);
  testgen::OracleFamilyParams params;
  params.max_k = 1;
  Instance instance = testgen::random_oracle_instance(rng, params);
  instance.k_max = 1;
  for (DemandPoint& point : instance.demand_points)
    for (auto& row : point.service_time_demand)
      for (Rational& value : row) value = 0;  // q == 1 everywhere
  Built built = prepare(std::move(instance));

  ModelSpec det = build_fleet_ict(built.instance, built.sets);
  ModelSpec prob = build_lr_mexclp_ict(built.instance, built.sets, built.table);
  std::map<std::tuple<int, int, int>, Rational> det_coef;
  for (const auto& [id, coefficient] : det.objective)
    det_coef[{id.a, id.u, id.t}] = coefficient;
  for (const auto& [id, coefficient] : prob.objective) {
    CHECK(id.k == 1);
    CHECK(coefficient == det_coef.at({id.a, id.u, id.t}));
  }
}

TEST_CASE("epsilon constraint appends, replaces, and stays idempotent") {
  std::mt19937_64 rng(47);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  size_t before = model.constraints.size();

  model = add_epsilon_constraint(std::move(model), 3);
  CHECK(model.constraints.size() == before + 1);
  CHECK(model.epsilon == 3);
  model = add_epsilon_constraint(std::move(model), 5);
  CHECK(model.constraints.size() == before + 1);  // replaced, not stacked
  CHECK(model.epsilon == 5);
  CHECK(model.constraints.back().tag == "epsilon");
  CHECK(model.constraints.back().rhs == 5);
  CHECK(model.constraints.back().terms.size() == static_cast<size_t>(model.dims.num_sites));
  CHECK_THROWS_AS(add_epsilon_constraint(std::move(model), -1), ValidationError);
}

TEST_CASE("fix_variables pins what each mode says it pins") {
  std::mt19937_64 rng(48);
  Built built = prepare(testgen::random_oracle_instance(rng));
  Plan plan = testgen::random_static_baseline(rng, built.instance, 2);
  ModelSpec base = build_fleet_ict(built.instance, built.sets);

  ModelSpec z_only = fix_variables(base, plan, FixMode::kZOnly);
  CHECK(count_tag(z_only, "fix") == static_cast<size_t>(built.instance.num_sites()));

  ModelSpec both = fix_variables(base, plan, FixMode::kZAndX);
  CHECK(count_tag(both, "fix") ==
        static_cast<size_t>(built.instance.num_sites()) +
            static_cast<size_t>(built.instance.num_sites()) * built.instance.num_types() *
                built.instance.num_periods);

  ModelSpec open_only = fix_variables(base, plan, FixMode::kOpenOnly);
  CHECK(count_tag(open_only, "fix") == plan.opened.size());
  for (const LinearConstraint& row : open_only.constraints)
    if (row.tag == "fix") {
      CHECK(row.rhs == 1);
      CHECK(row.terms[0].first.family == VarFamily::kZ);
    }
}

TEST_CASE("fix_variables rejects mismatched plans") {
  std::mt19937_64 rng(49);
  testgen::OracleFamilyParams params;
  params.max_periods = 3;
  Instance instance = testgen::random_oracle_instance(rng, params);
  while (instance.num_periods == 1) instance = testgen::random_oracle_instance(rng, params);
  Built built = prepare(std::move(instance));
  Plan multi = testgen::random_static_baseline(rng, built.instance, 2);

  ModelSpec fixed = build_fleet_static(built.instance, built.sets);
  CHECK_THROWS_AS(fix_variables(fixed, multi, FixMode::kZAndX), ValidationError);
  CHECK_NOTHROW(fix_variables(fixed, multi, FixMode::kZOnly));
}

TEST_CASE("well-formedness catches undeclared variables and duplicate terms") {
  std::mt19937_64 rng(50);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);

  ModelSpec broken = model;
  broken.objective.emplace_back(VarId::z(built.instance.num_sites() + 5), Rational(1));
  CHECK_THROWS_AS(broken.check_well_formed(), ValidationError);

  ModelSpec duplicated = model;
  LinearConstraint row;
  row.terms.emplace_back(VarId::z(0), 1);
  row.terms.emplace_back(VarId::z(0), 1);
  row.tag = "capacity";
  duplicated.constraints.push_back(row);
  CHECK_THROWS_AS(duplicated.check_well_formed(), ValidationError);
}
