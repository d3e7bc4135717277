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
#include <set>
#include <string>
#include <vector>

#include "emsloc/rational.hpp"

namespace emsloc {

/// One service class (e.g. ALS or BLS): its own fleet, its own response
/// time standard, its own demand stream.
struct AmbulanceType {
  int id = 0;
  std::string label;
  int fleet_size = 1;            // P_u
  Rational response_standard;    // S_u, minutes
};

/// Demand node. Tensors are indexed [type][period].
struct DemandPoint {
  int id = 0;
  std::vector<std::vector<Rational>> demand;               // d_iu^t, calls
  std::vector<std::vector<Rational>> service_time_demand;  // d-bar, fraction of a period
};

/// Candidate station site.
struct Site {
  int id = 0;
  int capacity = 1;  // C_j, vehicles held simultaneously
};

/// Row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Rational& at(int r, int c) const { return cells_[static_cast<size_t>(r) * cols_ + c]; }
  Rational& at(int r, int c) { return cells_[static_cast<size_t>(r) * cols_ + c]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> cells_;
};

/// A full problem instance. Immutable after construction/validation;
/// safe to share across threads.
struct Instance {
  std::vector<DemandPoint> demand_points;
  std::vector<Site> sites;
  std::vector<AmbulanceType> ambulance_types;
  int num_periods = 1;
  int k_max = 1;
  Matrix travel_time;            // [site][point], minutes
  Matrix demand_to_demand_time;  // [point][point], minutes, zero diagonal

  int num_points() const { return static_cast<int>(demand_points.size()); }
  int num_sites() const { return static_cast<int>(sites.size()); }
  int num_types() const { return static_cast<int>(ambulance_types.size()); }

  const Rational& demand(int i, int u, int t) const { return demand_points[i].demand[u][t]; }
  const Rational& service_demand(int i, int u, int t) const {
    return demand_points[i].service_time_demand[u][t];
  }

  Rational total_demand() const;
  Rational total_demand_of_type(int u) const;
  int total_fleet() const;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  /// Hash of the canonical serialization; stable across save/load.
  std::string fingerprint() const;
};

/// A concrete location/allocation decision: opened stations plus the
/// per-period binary presence of each ambulance type at each site.
/// Also carries decode results when produced by a solver.
struct Plan {
  std::set<int> opened;                              // z
  std::vector<std::vector<std::vector<int>>> alloc;  // x[site][type][period], 0/1
  int num_periods = 0;
  bool has_objective = false;
  Rational objective;
  std::vector<Rational> coverage_rate_per_type;  // in [0,1]
  Rational coverage_rate_total;

  static Plan empty(const Instance& instance, int periods);

  int stations_used() const { return static_cast<int>(opened.size()); }

  /// A static (single-period) plan copied across `periods` periods.
  Plan replicate(int periods) const;

  /// Checks capacity, fleet and site-link feasibility against an instance.
  /// Throws ValidationError naming the constraint family.
  void validate_against(const Instance& instance) const;
};

std::string serialize_instance(const Instance& instance);
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

std::string serialize_plan(const Plan& plan);
Plan parse_plan(const std::string& text, const Instance& instance);

/// Loads a plan and checks it against the instance (S1-S3 baselines).
Plan baseline_plan_load(const std::string& path, const Instance& instance);
void save_plan(const Plan& plan, const std::string& path);

enum class DemandProfile { kUniform, kTwoPeakDiurnal };
enum class SpatialModel { kUniformSquare, kClustered };

struct GeneratorTypeConfig {
  std::string label;
  int fleet_size = 1;
  Rational response_standard;
};

/// Synthetic-instance generator parameters. Defaults mirror the scale of
/// the Belo Horizonte system: 427 demand districts, 1527 candidate sites,
/// 24 hourly periods, 7 ALS + 21 BLS, capacity 2, k_max 3, standards
/// 10 and 8 minutes.
struct GeneratorConfig {
  int num_demand_points = 427;
  int num_sites = 1527;
  int num_periods = 24;
  std::uint64_t seed = 1;
  DemandProfile demand_profile = DemandProfile::kTwoPeakDiurnal;
  SpatialModel spatial_model = SpatialModel::kClustered;
  std::vector<GeneratorTypeConfig> ambulance_types = {
      {"ALS", 7, Rational(10)},
      {"BLS", 21, Rational(8)},
  };
  int site_capacity = 2;
  int k_max = 3;
  /// Mean calls per (point, type, period), in hundredths.
  int demand_scale_centi = 127;
  /// Side of the square planning area, in hundredths of a minute of travel.
  int area_centiminutes = 3600;
  /// Divides euclidean distances to obtain travel minutes.
  double travel_speed = 1.0;
  int num_clusters = 2;
  Rational mean_service_minutes = Rational(45);
  Rational period_length_minutes = Rational(60);
  /// Demand tensors are call counts over this many days; busy fractions
  /// are per period, so the service-time conversion divides by it. One day
  /// of horizon with high demand_scale yields the overload (b > 1) family.
  int demand_horizon_days = 365;

  void validate() const;
  std::string fingerprint() const;
};

GeneratorConfig parse_generator_config(const std::string& text);
GeneratorConfig load_generator_config(const std::string& path);
std::string serialize_generator_config(const GeneratorConfig& config);

/// Deterministic in (config, seed): equal configs produce byte-identical
/// instance files.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace emsloc
