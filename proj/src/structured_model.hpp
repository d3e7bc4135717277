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

#include <vector>

#include "emsloc/formulation.hpp"

namespace emsloc::detail {

/// One (i, u, t) coverage group: the x variables that can serve it, its y
/// variables, and the precomputed "best value with n servers" ladder that
/// makes y decoding and bound computation O(1).
struct CoverageGroup {
  int i = 0;
  int u = 0;
  int t = 0;
  std::vector<int> x_locals;  // local x ids covering this group
  std::vector<int> y_vars;    // model var indices (1 det entry, k_max prob entries)
  std::vector<Rational> coefficients;  // objective coefficient per y var

  // value_at[n]: best objective contribution with n covering servers;
  // choice_at[n]: index into y_vars realizing it, -1 for none.
  std::vector<Rational> value_at;
  std::vector<int> choice_at;
  std::vector<double> value_at_d;
};

/// Solver view of a builder-produced ModelSpec, recovered from constraint
/// tags. x variables get dense local ids (j * U + u) * T + t.
struct StructuredModel {
  const ModelSpec* model = nullptr;
  int num_points = 0;
  int num_sites = 0;
  int num_types = 0;
  int num_periods = 0;
  bool probabilistic = false;

  std::vector<std::vector<int>> fleet;  // [u][t] limits
  std::vector<int> capacity;            // [j]
  int epsilon = 0;                      // station budget (num_sites when absent)

  std::vector<signed char> fixed_z;  // [j]: -1 free, 0/1 fixed
  std::vector<signed char> fixed_x;  // [local x]: -1 free, 0/1 fixed
  bool contradictory_fix = false;    // an EQ row demanded a non-binary value

  std::vector<CoverageGroup> groups;            // ordered (i, u, t)
  std::vector<std::vector<int>> groups_of_x;    // local x id -> group indices

  int x_local(int j, int u, int t) const {
    return (j * num_types + u) * num_periods + t;
  }
  int x_site(int local) const { return local / (num_types * num_periods); }
  int x_type(int local) const { return (local / num_periods) % num_types; }
  int x_period(int local) const { return local % num_periods; }
  int x_var_index(int local) const {
    return num_sites + local;  // builders declare z block then x block
  }

  /// Max attainable objective with every allowed server placed; a cheap
  /// valid upper bound for any feasible assignment.
  Rational root_upper_bound() const;
};

StructuredModel parse_structured(const ModelSpec& model);

/// Forces implied by fix rows: x=1 implies z=1; z=0 implies x=0. Returns
/// false on contradiction (also when capacity/fleet/epsilon are already
/// exceeded by fixed variables alone).
bool propagate_fixes(const StructuredModel& structured, std::vector<signed char>& z_state,
                     std::vector<signed char>& x_state);

}  // namespace emsloc::detail
