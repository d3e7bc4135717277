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
#include <utility>
#include <vector>

#include "emsloc/coverage.hpp"
#include "emsloc/instance.hpp"

namespace emsloc {

enum class VarFamily : std::uint8_t { kZ, kX, kYDet, kYProb };

/// Identity of one binary variable. `a` is the site for z/x and the demand
/// point for y; `k` is 1-based and used by y_prob only.
struct VarId {
  VarFamily family = VarFamily::kZ;
  std::int32_t a = -1;
  std::int32_t u = -1;
  std::int32_t k = -1;
  std::int32_t t = -1;

  static VarId z(int j) { return {VarFamily::kZ, j, -1, -1, -1}; }
  static VarId x(int j, int u, int t) { return {VarFamily::kX, j, u, -1, t}; }
  static VarId y_det(int i, int u, int t) { return {VarFamily::kYDet, i, u, -1, t}; }
  static VarId y_prob(int i, int u, int k, int t) { return {VarFamily::kYProb, i, u, k, t}; }

  bool operator==(const VarId&) const = default;
  auto operator<=>(const VarId&) const = default;

  /// "z_5", "x_3_0_12", "y_41_1_7" (deterministic), "y_41_1_2_7" (probabilistic).
  std::string name() const;
};

enum class Relation { kLE, kGE, kEQ };

/// One linear row. Constraint matrices of all four models are integral;
/// only objectives carry rationals.
struct LinearConstraint {
  std::vector<std::pair<VarId, long long>> terms;
  Relation relation = Relation::kLE;
  long long rhs = 0;
  /// Constraint-family label: coverage-link, server-count, one-k,
  /// fleet-limit, capacity, site-link, epsilon, fix.
  std::string tag;
};

enum class ModelKind { kFleetICt, kLrMexclpICt, kFleetStatic, kLrMexclpStatic };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);
bool model_kind_is_probabilistic(ModelKind kind);
bool model_kind_is_static(ModelKind kind);

struct ModelDims {
  int num_points = 0;
  int num_sites = 0;
  int num_types = 0;
  int num_periods = 0;  // 1 for the static builders
  int k_max = 0;        // 0 for deterministic models
};

/// An abstract 0-1 maximization program, solver-agnostic.
struct ModelSpec {
  std::string name;
  ModelKind kind = ModelKind::kFleetICt;
  std::string instance_fingerprint;
  ModelDims dims;
  std::optional<int> epsilon;
  std::vector<VarId> variables;
  std::vector<std::pair<VarId, Rational>> objective;
  std::vector<LinearConstraint> constraints;

  size_t num_vars() const { return variables.size(); }

  /// Position of a variable in `variables`, computed from the dims.
  /// Returns -1 for ids outside the model.
  int var_index(const VarId& id) const;

  /// Throws ValidationError if a referenced variable is undeclared or a
  /// constraint repeats a variable.
  void check_well_formed() const;
};

/// Deterministic multi-period model: coverage-link, fleet-limit, capacity
/// and site-link rows; objective d_iu^t on y(i,u,t).
ModelSpec build_fleet_ict(const Instance& instance, const CoverageSets& sets);

/// Probabilistic multi-period model: server-count, one-k, fleet-limit,
/// capacity and site-link rows; objective d_iu^t q_iuk^t on y(i,u,k,t).
ModelSpec build_lr_mexclp_ict(const Instance& instance, const CoverageSets& sets,
                              const ReliabilityTable& table);

/// Single-period aggregation of build_fleet_ict: objective coefficient on
/// y(i,u) is the demand summed over periods.
ModelSpec build_fleet_static(const Instance& instance, const CoverageSets& sets);

/// Single-period aggregation of build_lr_mexclp_ict: objective coefficient
/// on y(i,u,k) is sum_t d_iu^t q_iuk^t, so a static allocation scores
/// exactly what its replication scores on the multi-period objective.
ModelSpec build_lr_mexclp_static(const Instance& instance, const CoverageSets& sets,
                                 const ReliabilityTable& table);

ModelSpec build_model(ModelKind kind, const Instance& instance, const CoverageSets& sets,
                      const ReliabilityTable& table);

/// Appends (or replaces) the station-budget row sum z <= epsilon.
ModelSpec add_epsilon_constraint(ModelSpec model, int epsilon);

enum class FixMode {
  kZAndX,     // S1: station layout and every allocation are parameters
  kZOnly,     // S2/S3: station layout is a parameter
  kOpenOnly,  // mandatory sites: fix listed z to 1, leave the rest free
};

/// Replaces the plan's variables with var = value equality rows ("fix").
ModelSpec fix_variables(ModelSpec model, const Plan& plan, FixMode mode);

}  // namespace emsloc
