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

#include "emsloc/formulation.hpp"

#include <set>

#include "emsloc/errors.hpp"

namespace emsloc {

std::string VarId::name() const {
  switch (family) {
    case VarFamily::kZ:
      return "z_" + std::to_string(a);
    case VarFamily::kX:
      return "x_" + std::to_string(a) + "_" + std::to_string(u) + "_" + std::to_string(t);
    case VarFamily::kYDet:
      return "y_" + std::to_string(a) + "_" + std::to_string(u) + "_" + std::to_string(t);
    case VarFamily::kYProb:
      return "y_" + std::to_string(a) + "_" + std::to_string(u) + "_" + std::to_string(k) + "_" +
             std::to_string(t);
  }
  throw Error("unreachable variable family");
}

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kFleetICt: return "fleet-ict";
    case ModelKind::kLrMexclpICt: return "lr-mexclp-ict";
    case ModelKind::kFleetStatic: return "fleet-static";
    case ModelKind::kLrMexclpStatic: return "lr-mexclp-static";
  }
  throw Error("unreachable model kind");
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "fleet-ict") return ModelKind::kFleetICt;
  if (name == "lr-mexclp-ict") return ModelKind::kLrMexclpICt;
  if (name == "fleet-static") return ModelKind::kFleetStatic;
  if (name == "lr-mexclp-static") return ModelKind::kLrMexclpStatic;
  throw ValidationError("unknown model kind '" + name +
                        "' (expected fleet-ict, lr-mexclp-ict, fleet-static or lr-mexclp-static)");
}

bool model_kind_is_probabilistic(ModelKind kind) {
  return kind == ModelKind::kLrMexclpICt || kind == ModelKind::kLrMexclpStatic;
}

bool model_kind_is_static(ModelKind kind) {
  return kind == ModelKind::kFleetStatic || kind == ModelKind::kLrMexclpStatic;
}

int ModelSpec::var_index(const VarId& id) const {
  const ModelDims& d = dims;
  const int x_base = d.num_sites;
  const int y_base = x_base + d.num_sites * d.num_types * d.num_periods;
  switch (id.family) {
    case VarFamily::kZ:
      if (id.a < 0 || id.a >= d.num_sites) return -1;
      return id.a;
    case VarFamily::kX:
      if (id.a < 0 || id.a >= d.num_sites || id.u < 0 || id.u >= d.num_types || id.t < 0 ||
          id.t >= d.num_periods)
        return -1;
      return x_base + (id.a * d.num_types + id.u) * d.num_periods + id.t;
    case VarFamily::kYDet:
      if (d.k_max != 0) return -1;
      if (id.a < 0 || id.a >= d.num_points || id.u < 0 || id.u >= d.num_types || id.t < 0 ||
          id.t >= d.num_periods)
        return -1;
      return y_base + (id.a * d.num_types + id.u) * d.num_periods + id.t;
    case VarFamily::kYProb:
      if (d.k_max == 0) return -1;
      if (id.a < 0 || id.a >= d.num_points || id.u < 0 || id.u >= d.num_types || id.k < 1 ||
          id.k > d.k_max || id.t < 0 || id.t >= d.num_periods)
        return -1;
      return y_base +
             ((id.a * d.num_types + id.u) * d.k_max + (id.k - 1)) * d.num_periods + id.t;
  }
  return -1;
}

void ModelSpec::check_well_formed() const {
  for (const auto& [id, coef] : objective) {
    (void)coef;
    if (var_index(id) < 0)
      throw ValidationError("model objective references undeclared variable " + id.name());
  }
  for (const LinearConstraint& row : constraints) {
    std::set<VarId> seen;
    for (const auto& [id, coef] : row.terms) {
      (void)coef;
      if (var_index(id) < 0)
        throw ValidationError("constraint '" + row.tag + "' references undeclared variable " +
                              id.name());
      if (!seen.insert(id).second)
        throw ValidationError("constraint '" + row.tag + "' repeats variable " + id.name());
    }
  }
}

namespace {

// Shared scaffolding of all four builders: z, x, fleet-limit, capacity and
// site-link rows over a chosen number of model periods.
ModelSpec base_model(const Instance& instance, int model_periods, bool probabilistic) {
  ModelSpec model;
  model.instance_fingerprint = instance.fingerprint();
  model.dims = {instance.num_points(), instance.num_sites(), instance.num_types(), model_periods,
                probabilistic ? instance.k_max : 0};

  for (int j = 0; j < instance.num_sites(); ++j) model.variables.push_back(VarId::z(j));
  for (int j = 0; j < instance.num_sites(); ++j)
    for (int u = 0; u < instance.num_types(); ++u)
      for (int t = 0; t < model_periods; ++t) model.variables.push_back(VarId::x(j, u, t));
  return model;
}

void add_operational_constraints(ModelSpec& model, const Instance& instance) {
  const int periods = model.dims.num_periods;
  for (int u = 0; u < instance.num_types(); ++u)
    for (int t = 0; t < periods; ++t) {
      LinearConstraint row;
      for (int j = 0; j < instance.num_sites(); ++j) row.terms.emplace_back(VarId::x(j, u, t), 1);
      row.relation = Relation::kLE;
      row.rhs = instance.ambulance_types[u].fleet_size;
      row.tag = "fleet-limit";
      model.constraints.push_back(std::move(row));
    }
  for (int j = 0; j < instance.num_sites(); ++j)
    for (int t = 0; t < periods; ++t) {
      LinearConstraint row;
      for (int u = 0; u < instance.num_types(); ++u) row.terms.emplace_back(VarId::x(j, u, t), 1);
      row.terms.emplace_back(VarId::z(j), -static_cast<long long>(instance.sites[j].capacity));
      row.relation = Relation::kLE;
      row.rhs = 0;
      row.tag = "capacity";
      model.constraints.push_back(std::move(row));
    }
  for (int j = 0; j < instance.num_sites(); ++j)
    for (int u = 0; u < instance.num_types(); ++u)
      for (int t = 0; t < periods; ++t) {
        LinearConstraint row;
        row.terms.emplace_back(VarId::x(j, u, t), 1);
        row.terms.emplace_back(VarId::z(j), -1);
        row.relation = Relation::kLE;
        row.rhs = 0;
        row.tag = "site-link";
        model.constraints.push_back(std::move(row));
      }
}

// Aggregated objective coefficient for the deterministic models:
// the demand itself (one period) or its sum over periods (static).
Rational deterministic_coefficient(const Instance& instance, int i, int u, int t, bool aggregate) {
  if (!aggregate) return instance.demand(i, u, t);
  Rational sum(0);
  for (int tt = 0; tt < instance.num_periods; ++tt) sum += instance.demand(i, u, tt);
  return sum;
}

ModelSpec build_fleet(const Instance& instance, const CoverageSets& sets, bool aggregate) {
  const int periods = aggregate ? 1 : instance.num_periods;
  ModelSpec model = base_model(instance, periods, false);
  model.kind = aggregate ? ModelKind::kFleetStatic : ModelKind::kFleetICt;
  model.name = model_kind_name(model.kind);

  for (int i = 0; i < instance.num_points(); ++i)
    for (int u = 0; u < instance.num_types(); ++u)
      for (int t = 0; t < periods; ++t) model.variables.push_back(VarId::y_det(i, u, t));

  for (int i = 0; i < instance.num_points(); ++i)
    for (int u = 0; u < instance.num_types(); ++u)
      for (int t = 0; t < periods; ++t) {
        model.objective.emplace_back(VarId::y_det(i, u, t),
                                     deterministic_coefficient(instance, i, u, t, aggregate));
        LinearConstraint row;
        for (int j : sets.sites_for(i, u)) row.terms.emplace_back(VarId::x(j, u, t), 1);
        row.terms.emplace_back(VarId::y_det(i, u, t), -1);
        row.relation = Relation::kGE;
        row.rhs = 0;
        row.tag = "coverage-link";
        model.constraints.push_back(std::move(row));
      }

  add_operational_constraints(model, instance);
  return model;
}

ModelSpec build_lr_mexclp(const Instance& instance, const CoverageSets& sets,
                          const ReliabilityTable& table, bool aggregate) {
  const int periods = aggregate ? 1 : instance.num_periods;
  const int k_max = instance.k_max;
  ModelSpec model = base_model(instance, periods, true);
  model.kind = aggregate ? ModelKind::kLrMexclpStatic : ModelKind::kLrMexclpICt;
  model.name = model_kind_name(model.kind);

  for (int i = 0; i < instance.num_points(); ++i)
    for (int u = 0; u < instance.num_types(); ++u)
      for (int k = 1; k <= k_max; ++k)
        for (int t = 0; t < periods; ++t) model.variables.push_back(VarId::y_prob(i, u, k, t));

  for (int i = 0; i < instance.num_points(); ++i)
    for (int u = 0; u < instance.num_types(); ++u)
      for (int t = 0; t < periods; ++t) {
        for (int k = 1; k <= k_max; ++k) {
          Rational coefficient(0);
          if (aggregate) {
            for (int tt = 0; tt < instance.num_periods; ++tt)
              coefficient += instance.demand(i, u, tt) * table.q(i, u, k, tt);
          } else {
            coefficient = instance.demand(i, u, t) * table.q(i, u, k, t);
          }
          model.objective.emplace_back(VarId::y_prob(i, u, k, t), std::move(coefficient));
        }

        LinearConstraint servers;
        for (int j : sets.sites_for(i, u)) servers.terms.emplace_back(VarId::x(j, u, t), 1);
        for (int k = 1; k <= k_max; ++k)
          servers.terms.emplace_back(VarId::y_prob(i, u, k, t), -static_cast<long long>(k));
        servers.relation = Relation::kGE;
        servers.rhs = 0;
        servers.tag = "server-count";
        model.constraints.push_back(std::move(servers));

        LinearConstraint one_k;
        for (int k = 1; k <= k_max; ++k) one_k.terms.emplace_back(VarId::y_prob(i, u, k, t), 1);
        one_k.relation = Relation::kLE;
        one_k.rhs = 1;
        one_k.tag = "one-k";
        model.constraints.push_back(std::move(one_k));
      }

  add_operational_constraints(model, instance);
  return model;
}

}  // namespace

ModelSpec build_fleet_ict(const Instance& instance, const CoverageSets& sets) {
  return build_fleet(instance, sets, false);
}

ModelSpec build_fleet_static(const Instance& instance, const CoverageSets& sets) {
  return build_fleet(instance, sets, true);
}

ModelSpec build_lr_mexclp_ict(const Instance& instance, const CoverageSets& sets,
                              const ReliabilityTable& table) {
  return build_lr_mexclp(instance, sets, table, false);
}

ModelSpec build_lr_mexclp_static(const Instance& instance, const CoverageSets& sets,
                                 const ReliabilityTable& table) {
  return build_lr_mexclp(instance, sets, table, true);
}

ModelSpec build_model(ModelKind kind, const Instance& instance, const CoverageSets& sets,
                      const ReliabilityTable& table) {
  switch (kind) {
    case ModelKind::kFleetICt: return build_fleet_ict(instance, sets);
    case ModelKind::kLrMexclpICt: return build_lr_mexclp_ict(instance, sets, table);
    case ModelKind::kFleetStatic: return build_fleet_static(instance, sets);
    case ModelKind::kLrMexclpStatic: return build_lr_mexclp_static(instance, sets, table);
  }
  throw Error("unreachable model kind");
}

ModelSpec add_epsilon_constraint(ModelSpec model, int epsilon) {
  if (epsilon < 0) throw ValidationError("epsilon: must be >= 0");
  std::erase_if(model.constraints,
                [](const LinearConstraint& row) { return row.tag == "epsilon"; });
  LinearConstraint row;
  for (int j = 0; j < model.dims.num_sites; ++j) row.terms.emplace_back(VarId::z(j), 1);
  row.relation = Relation::kLE;
  row.rhs = epsilon;
  row.tag = "epsilon";
  model.constraints.push_back(std::move(row));
  model.epsilon = epsilon;
  return model;
}

ModelSpec fix_variables(ModelSpec model, const Plan& plan, FixMode mode) {
  const ModelDims& dims = model.dims;
  if (static_cast<int>(plan.alloc.size()) != dims.num_sites)
    throw ValidationError("fix_variables: plan sites do not match the model");

  auto fix = [&model](VarId id, int value) {
    LinearConstraint row;
    row.terms.emplace_back(id, 1);
    row.relation = Relation::kEQ;
    row.rhs = value;
    row.tag = "fix";
    model.constraints.push_back(std::move(row));
  };

  if (mode == FixMode::kOpenOnly) {
    for (int j : plan.opened) {
      if (j < 0 || j >= dims.num_sites)
        throw ValidationError("fix_variables: plan opens unknown site " + std::to_string(j));
      fix(VarId::z(j), 1);
    }
    return model;
  }

  for (int j = 0; j < dims.num_sites; ++j) fix(VarId::z(j), plan.opened.contains(j) ? 1 : 0);

  if (mode == FixMode::kZAndX) {
    if (plan.num_periods != dims.num_periods)
      throw ValidationError("fix_variables: plan periods (" + std::to_string(plan.num_periods) +
                            ") do not match the model (" + std::to_string(dims.num_periods) + ")");
    for (int j = 0; j < dims.num_sites; ++j) {
      if (static_cast<int>(plan.alloc[j].size()) != dims.num_types)
        throw ValidationError("fix_variables: plan types do not match the model");
      for (int u = 0; u < dims.num_types; ++u)
        for (int t = 0; t < dims.num_periods; ++t) fix(VarId::x(j, u, t), plan.alloc[j][u][t]);
    }
  }
  return model;
}

}  // namespace emsloc
