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

#include "structured_model.hpp"

#include <map>

#include "emsloc/errors.hpp"

namespace emsloc::detail {

namespace {

ValidationError unstructured(const std::string& what) {
  return ValidationError("solver: model is not in builder form: " + what);
}

}  // namespace

Rational StructuredModel::root_upper_bound() const {
  // Per group, count the servers not excluded by fixes and take the ladder
  // value as if all of them were placed.
  Rational bound(0);
  for (const CoverageGroup& group : groups) {
    int allowed = 0;
    for (int local : group.x_locals) {
      int j = x_site(local);
      if (fixed_x[local] == 0) continue;
      if (fixed_z[j] == 0) continue;
      ++allowed;
    }
    bound += group.value_at[allowed];
  }
  return bound;
}

StructuredModel parse_structured(const ModelSpec& model) {
  model.check_well_formed();

  StructuredModel s;
  s.model = &model;
  s.num_points = model.dims.num_points;
  s.num_sites = model.dims.num_sites;
  s.num_types = model.dims.num_types;
  s.num_periods = model.dims.num_periods;
  s.probabilistic = model.dims.k_max > 0;
  const int k_max = model.dims.k_max;

  s.fleet.assign(s.num_types, std::vector<int>(s.num_periods, 0));
  std::vector<std::vector<bool>> fleet_seen(s.num_types, std::vector<bool>(s.num_periods, false));
  s.capacity.assign(s.num_sites, 0);
  std::vector<bool> capacity_seen(s.num_sites, false);
  s.epsilon = s.num_sites;
  s.fixed_z.assign(s.num_sites, -1);
  s.fixed_x.assign(static_cast<size_t>(s.num_sites) * s.num_types * s.num_periods, -1);

  // Group slots keyed by (i, u, t) in canonical order.
  auto group_key = [&](int i, int u, int t) {
    return (static_cast<size_t>(i) * s.num_types + u) * s.num_periods + t;
  };
  const size_t num_groups = static_cast<size_t>(s.num_points) * s.num_types * s.num_periods;
  s.groups.assign(num_groups, CoverageGroup{});
  std::vector<bool> group_seen(num_groups, false);

  for (const LinearConstraint& row : model.constraints) {
    if (row.tag == "coverage-link" || row.tag == "server-count") {
      if (row.relation != Relation::kGE || row.rhs != 0)
        throw unstructured("'" + row.tag + "' row is not >= 0");
      CoverageGroup group;
      int i = -1, u = -1, t = -1;
      std::map<int, std::pair<int, Rational>> y_by_k;  // k -> (var index, coef placeholder)
      for (const auto& [id, coef] : row.terms) {
        if (id.family == VarFamily::kX) {
          if (coef != 1) throw unstructured("coverage x coefficient is not 1");
          if (u == -1) u = id.u;
          if (t == -1) t = id.t;
          if (id.u != u || id.t != t) throw unstructured("coverage row mixes types or periods");
          group.x_locals.push_back(s.x_local(id.a, id.u, id.t));
        } else if (id.family == VarFamily::kYDet) {
          if (coef != -1) throw unstructured("coverage y coefficient is not -1");
          i = id.a;
          if (u == -1) u = id.u;
          if (t == -1) t = id.t;
          y_by_k[1] = {model.var_index(id), Rational(0)};
        } else if (id.family == VarFamily::kYProb) {
          if (coef != -id.k) throw unstructured("server-count y coefficient is not -k");
          i = id.a;
          if (u == -1) u = id.u;
          if (t == -1) t = id.t;
          y_by_k[id.k] = {model.var_index(id), Rational(0)};
        } else {
          throw unstructured("'" + row.tag + "' row touches a z variable");
        }
      }
      if (i < 0 || u < 0 || t < 0) throw unstructured("coverage row without y variable");
      if (s.probabilistic && static_cast<int>(y_by_k.size()) != k_max)
        throw unstructured("server-count row missing a k level");
      group.i = i;
      group.u = u;
      group.t = t;
      for (const auto& [k, entry] : y_by_k) {
        (void)k;
        group.y_vars.push_back(entry.first);
      }
      size_t key = group_key(i, u, t);
      if (group_seen[key]) throw unstructured("duplicate coverage row for a (i,u,t) triple");
      group_seen[key] = true;
      s.groups[key] = std::move(group);
    } else if (row.tag == "one-k") {
      if (row.relation != Relation::kLE || row.rhs != 1) throw unstructured("'one-k' row is not <= 1");
    } else if (row.tag == "fleet-limit") {
      int u = -1, t = -1;
      for (const auto& [id, coef] : row.terms) {
        if (id.family != VarFamily::kX || coef != 1)
          throw unstructured("fleet-limit row has a non-x term");
        if (u == -1) u = id.u;
        if (t == -1) t = id.t;
        if (id.u != u || id.t != t) throw unstructured("fleet-limit row mixes types or periods");
      }
      if (u < 0 || row.relation != Relation::kLE) throw unstructured("malformed fleet-limit row");
      if (fleet_seen[u][t]) throw unstructured("duplicate fleet-limit row");
      fleet_seen[u][t] = true;
      s.fleet[u][t] = static_cast<int>(row.rhs);
    } else if (row.tag == "capacity") {
      int j = -1;
      long long cap = -1;
      for (const auto& [id, coef] : row.terms) {
        if (id.family == VarFamily::kZ) {
          j = id.a;
          cap = -coef;
        } else if (id.family != VarFamily::kX || coef != 1) {
          throw unstructured("capacity row has an unexpected term");
        }
      }
      if (j < 0 || cap < 1 || row.relation != Relation::kLE || row.rhs != 0)
        throw unstructured("malformed capacity row");
      if (capacity_seen[j] && s.capacity[j] != static_cast<int>(cap))
        throw unstructured("conflicting capacity rows for one site");
      capacity_seen[j] = true;
      s.capacity[j] = static_cast<int>(cap);
    } else if (row.tag == "site-link") {
      // Structural x <= z; implied by capacity parsing, validated only.
      if (row.relation != Relation::kLE || row.rhs != 0 || row.terms.size() != 2)
        throw unstructured("malformed site-link row");
    } else if (row.tag == "epsilon") {
      if (row.relation != Relation::kLE) throw unstructured("epsilon row is not <=");
      s.epsilon = static_cast<int>(std::min<long long>(row.rhs, s.num_sites));
      if (row.rhs < 0) s.contradictory_fix = true;
    } else if (row.tag == "fix") {
      if (row.relation != Relation::kEQ || row.terms.size() != 1 || row.terms[0].second != 1)
        throw unstructured("malformed fix row");
      if (row.rhs != 0 && row.rhs != 1) {
        s.contradictory_fix = true;
        continue;
      }
      const VarId& id = row.terms[0].first;
      signed char value = static_cast<signed char>(row.rhs);
      if (id.family == VarFamily::kZ) {
        if (s.fixed_z[id.a] != -1 && s.fixed_z[id.a] != value) s.contradictory_fix = true;
        s.fixed_z[id.a] = value;
      } else if (id.family == VarFamily::kX) {
        int local = s.x_local(id.a, id.u, id.t);
        if (s.fixed_x[local] != -1 && s.fixed_x[local] != value) s.contradictory_fix = true;
        s.fixed_x[local] = value;
      } else {
        throw unstructured("fix rows may only pin z or x variables");
      }
    } else {
      throw unstructured("unknown constraint tag '" + row.tag + "'");
    }
  }

  for (size_t key = 0; key < num_groups; ++key)
    if (!group_seen[key]) throw unstructured("missing coverage row for a (i,u,t) triple");
  for (int u = 0; u < s.num_types; ++u)
    for (int t = 0; t < s.num_periods; ++t)
      if (!fleet_seen[u][t]) throw unstructured("missing fleet-limit row");
  for (int j = 0; j < s.num_sites; ++j)
    if (!capacity_seen[j]) throw unstructured("missing capacity row");

  // Attach objective coefficients to their groups.
  std::vector<Rational> coef_by_var(model.num_vars(), Rational(0));
  for (const auto& [id, coef] : model.objective) {
    int index = model.var_index(id);
    if (id.family == VarFamily::kZ || id.family == VarFamily::kX)
      throw unstructured("objective touches a z or x variable");
    coef_by_var[index] = coef;
  }

  s.groups_of_x.assign(s.fixed_x.size(), {});
  for (size_t key = 0; key < num_groups; ++key) {
    CoverageGroup& group = s.groups[key];
    group.coefficients.reserve(group.y_vars.size());
    for (int var : group.y_vars) group.coefficients.push_back(coef_by_var[var]);

    // Ladder: with n servers, the deterministic y is simply on; the
    // probabilistic y takes the best coefficient among k <= n, ties to the
    // smaller k. Coefficients are nonnegative by construction.
    const int max_n = static_cast<int>(group.x_locals.size());
    group.value_at.assign(max_n + 1, Rational(0));
    group.choice_at.assign(max_n + 1, -1);
    for (int n = 1; n <= max_n; ++n) {
      if (!s.probabilistic) {
        group.value_at[n] = group.coefficients[0];
        group.choice_at[n] = 0;
      } else {
        int best = group.choice_at[n - 1];
        Rational best_value = group.value_at[n - 1];
        int k = n;  // newly reachable level (k is 1-based, vector 0-based)
        if (k <= static_cast<int>(group.y_vars.size())) {
          if (best < 0 || group.coefficients[k - 1] > best_value) {
            best = k - 1;
            best_value = group.coefficients[k - 1];
          }
        }
        group.value_at[n] = best_value;
        group.choice_at[n] = best;
      }
    }
    group.value_at_d.resize(group.value_at.size());
    for (size_t n = 0; n < group.value_at.size(); ++n)
      group.value_at_d[n] = rational_to_double(group.value_at[n]);

    for (int local : group.x_locals) s.groups_of_x[local].push_back(static_cast<int>(key));
  }

  return s;
}

bool propagate_fixes(const StructuredModel& s, std::vector<signed char>& z_state,
                     std::vector<signed char>& x_state) {
  if (s.contradictory_fix) return false;
  z_state = s.fixed_z;
  x_state = s.fixed_x;

  for (size_t local = 0; local < x_state.size(); ++local) {
    if (x_state[local] != 1) continue;
    int j = s.x_site(static_cast<int>(local));
    if (z_state[j] == 0) return false;
    z_state[j] = 1;
  }
  for (size_t local = 0; local < x_state.size(); ++local) {
    int j = s.x_site(static_cast<int>(local));
    if (z_state[j] == 0 && x_state[local] == -1) x_state[local] = 0;
  }

  // Fixed vehicles alone must already respect capacity, fleet and budget.
  int forced_open = 0;
  for (int j = 0; j < s.num_sites; ++j)
    if (z_state[j] == 1) ++forced_open;
  if (forced_open > s.epsilon) return false;

  for (int t = 0; t < s.num_periods; ++t) {
    for (int u = 0; u < s.num_types; ++u) {
      int used = 0;
      for (int j = 0; j < s.num_sites; ++j)
        if (x_state[s.x_local(j, u, t)] == 1) ++used;
      if (used > s.fleet[u][t]) return false;
    }
    for (int j = 0; j < s.num_sites; ++j) {
      int held = 0;
      for (int u = 0; u < s.num_types; ++u)
        if (x_state[s.x_local(j, u, t)] == 1) ++held;
      if (held > s.capacity[j]) return false;
    }
  }
  return true;
}

}  // namespace emsloc::detail
