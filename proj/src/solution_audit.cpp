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

#include "emsloc/errors.hpp"
#include "emsloc/solver.hpp"

namespace emsloc {

Rational evaluate_objective(const ModelSpec& model, const std::vector<std::uint8_t>& values) {
  if (values.size() != model.num_vars())
    throw AuditError("assignment length does not match the model");
  Rational total(0);
  for (const auto& [id, coefficient] : model.objective)
    if (values[model.var_index(id)]) total += coefficient;
  return total;
}

std::optional<std::string> find_violation(const ModelSpec& model,
                                          const std::vector<std::uint8_t>& values) {
  if (values.size() != model.num_vars())
    return "assignment length does not match the model";
  for (const LinearConstraint& row : model.constraints) {
    long long lhs = 0;
    for (const auto& [id, coefficient] : row.terms)
      if (values[model.var_index(id)]) lhs += coefficient;
    bool ok = row.relation == Relation::kLE   ? lhs <= row.rhs
              : row.relation == Relation::kGE ? lhs >= row.rhs
                                              : lhs == row.rhs;
    if (!ok)
      return "constraint '" + row.tag + "' violated (lhs " + std::to_string(lhs) +
             (row.relation == Relation::kLE ? " <= " : row.relation == Relation::kGE ? " >= " : " == ") +
             std::to_string(row.rhs) + " fails)";
  }
  return std::nullopt;
}

Plan decode(const Solution& solution, const Instance& instance, const ModelSpec& model) {
  if (auto violation = find_violation(model, solution.values))
    throw AuditError("decode: " + *violation);
  Rational recomputed = evaluate_objective(model, solution.values);
  if (solution.status != SolveStatus::kInfeasible && recomputed != solution.objective)
    throw AuditError("decode: reported objective " + rational_to_string(solution.objective) +
                     " does not match recomputed " + rational_to_string(recomputed));

  if (model.dims.num_sites != instance.num_sites() ||
      model.dims.num_types != instance.num_types() ||
      model.dims.num_points != instance.num_points())
    throw ValidationError("decode: model does not belong to this instance");

  Plan plan = Plan::empty(instance, model.dims.num_periods);
  for (int j = 0; j < model.dims.num_sites; ++j)
    if (solution.values[model.var_index(VarId::z(j))]) plan.opened.insert(j);
  for (int j = 0; j < model.dims.num_sites; ++j)
    for (int u = 0; u < model.dims.num_types; ++u)
      for (int t = 0; t < model.dims.num_periods; ++t)
        plan.alloc[j][u][t] = solution.values[model.var_index(VarId::x(j, u, t))];

  plan.has_objective = true;
  plan.objective = recomputed;

  // Covered demand per type straight from the objective terms; the static
  // builders aggregate their coefficients over the full horizon, so the
  // denominator is the full-horizon demand in every model kind.
  std::vector<Rational> covered(instance.num_types(), Rational(0));
  for (const auto& [id, coefficient] : model.objective)
    if (solution.values[model.var_index(id)]) covered[id.u] += coefficient;

  plan.coverage_rate_per_type.resize(instance.num_types());
  Rational covered_total(0), demand_total(0);
  for (int u = 0; u < instance.num_types(); ++u) {
    Rational type_total = instance.total_demand_of_type(u);
    plan.coverage_rate_per_type[u] = type_total == 0 ? Rational(1) : covered[u] / type_total;
    covered_total += covered[u];
    demand_total += type_total;
  }
  plan.coverage_rate_total = demand_total == 0 ? Rational(1) : covered_total / demand_total;
  return plan;
}

}  // namespace emsloc
