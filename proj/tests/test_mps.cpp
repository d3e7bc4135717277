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

#include <random>

#include "emsloc/errors.hpp"
#include "emsloc/solver.hpp"
#include "support/mps_reader.hpp"
#include "support/oracle.hpp"
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

// Counts plus exact coefficient comparison between a ModelSpec and its
// re-parsed MPS text.
void check_round_trip(const ModelSpec& model) {
  mps_reader::ParsedMps parsed = mps_reader::parse(mps_string(model));
  CHECK(parsed.maximize);
  CHECK(parsed.num_constraint_rows() == model.constraints.size());
  CHECK(parsed.binary_variables.size() == model.num_vars());

  // Row relations in declaration order.
  size_t row_index = 0;
  for (const auto& [name, type] : parsed.rows) {
    if (type == 'N') continue;
    char expected = model.constraints[row_index].relation == Relation::kLE   ? 'L'
                    : model.constraints[row_index].relation == Relation::kGE ? 'G'
                                                                             : 'E';
    CHECK(type == expected);
    ++row_index;
  }

  // Every constraint coefficient, exactly.
  row_index = 0;
  for (const LinearConstraint& row : model.constraints) {
    char row_name[16];
    std::snprintf(row_name, sizeof(row_name), "R%06zu", row_index);
    size_t terms_found = 0;
    for (const auto& [id, coefficient] : row.terms) {
      auto column = parsed.columns.find(id.name());
      REQUIRE(column != parsed.columns.end());
      auto cell = column->second.find(row_name);
      REQUIRE(cell != column->second.end());
      CHECK(cell->second == static_cast<double>(coefficient));
      ++terms_found;
    }
    if (row.rhs != 0) {
      auto rhs = parsed.rhs.find(row_name);
      REQUIRE(rhs != parsed.rhs.end());
      CHECK(*&rhs->second == static_cast<double>(row.rhs));
    }
    CHECK(terms_found == row.terms.size());
    ++row_index;
  }

  // Objective coefficients bit-exactly at double precision.
  for (const auto& [id, coefficient] : model.objective) {
    double expected = rational_to_double(coefficient);
    auto column = parsed.columns.find(id.name());
    if (expected == 0.0 && coefficient == 0) continue;  // zero terms are omitted
    REQUIRE(column != parsed.columns.end());
    auto cell = column->second.find("OBJ");
    REQUIRE(cell != column->second.end());
    CHECK(cell->second == expected);
  }
}

}  // namespace

TEST_CASE("tiny model round-trips through the test-side MPS reader") {
  std::mt19937_64 rng(81);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  check_round_trip(model);
  CHECK(mps_string(model).find("OBJSENSE") != std::string::npos);
  CHECK(mps_string(model).find(" BV ") != std::string::npos);
}

TEST_CASE("random models round-trip, including epsilon and fixes") {
  std::mt19937_64 rng(82);
  for (int round = 0; round < 10; ++round) {
    Built built = prepare(testgen::random_oracle_instance(rng));
    ModelSpec model = rng() % 2 == 0
                          ? build_fleet_ict(built.instance, built.sets)
                          : build_lr_mexclp_ict(built.instance, built.sets, built.table);
    if (rng() % 2 == 0) model = add_epsilon_constraint(std::move(model), 2);
    if (rng() % 2 == 0) {
      Plan baseline = testgen::random_static_baseline(rng, built.instance, 1);
      model = fix_variables(std::move(model), baseline, FixMode::kZOnly);
    }
    check_round_trip(model);
  }
}

TEST_CASE("variable names follow the family_index scheme") {
  CHECK(VarId::z(5).name() == "z_5");
  CHECK(VarId::x(3, 0, 12).name() == "x_3_0_12");
  CHECK(VarId::y_det(41, 1, 7).name() == "y_41_1_7");
  CHECK(VarId::y_prob(41, 1, 2, 7).name() == "y_41_1_2_7");
}

TEST_CASE("import of an all-zeros file is feasible with objective zero") {
  std::mt19937_64 rng(83);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  Solution solution = parse_solution_text("", model);
  CHECK(solution.status == SolveStatus::kFeasible);
  CHECK(solution.objective == 0);
}

TEST_CASE("import audits constraint violations naming the tag") {
  Instance instance = parse_instance(R"({
    "num_periods": 1, "k_max": 1,
    "ambulance_types": [
      {"id": 0, "label": "A", "fleet_size": 1, "response_standard": 10},
      {"id": 1, "label": "B", "fleet_size": 1, "response_standard": 10}],
    "sites": [{"id": 0, "capacity": 1}],
    "demand_points": [{"id": 0, "demand": [[1],[1]], "service_time_demand": [[0],[0]]}],
    "travel_time": [[4]],
    "demand_to_demand_time": [[0]]
  })");
  Built built = prepare(std::move(instance));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  // Two vehicles on a capacity-1 site.
  std::string text = "z_0 1\nx_0_0_0 1\nx_0_1_0 1\n";
  CHECK_THROWS_WITH_AS(parse_solution_text(text, model), doctest::Contains("capacity"),
                       AuditError);
}

TEST_CASE("import reports malformed lines with their number") {
  std::mt19937_64 rng(84);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  CHECK_THROWS_WITH_AS(parse_solution_text("z_0 1\nz_1 maybe\n", model),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_solution_text("z_0 0.37\n", model),
                       doctest::Contains("not binary"), ParseError);
}

TEST_CASE("import ignores unknown variable names") {
  std::mt19937_64 rng(85);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec model = build_fleet_ict(built.instance, built.sets);
  Solution solution = parse_solution_text("# comment line\nnot_a_var 1\nz_0 1\n", model);
  CHECK(solution.value_of(model, VarId::z(0)) == 1);
}

TEST_CASE("exported solutions re-import with the same audited objective") {
  std::mt19937_64 rng(86);
  Built built = prepare(testgen::random_oracle_instance(rng));
  ModelSpec model = build_lr_mexclp_ict(built.instance, built.sets, built.table);
  Solution solved = solve_exact(model);
  std::string text;
  for (size_t v = 0; v < model.num_vars(); ++v)
    if (solved.values[v]) text += model.variables[v].name() + " 1\n";
  Solution imported = parse_solution_text(text, model);
  CHECK(imported.objective == solved.objective);
}
