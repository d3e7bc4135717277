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

// Hand-rolled random instances for the oracle family plus small fixed
// fixtures. Kept independent of the library's generator so solver tests do
// not inherit its structure.

#pragma once

#include <random>
#include <vector>

#include "emsloc/instance.hpp"

namespace testgen {

using emsloc::AmbulanceType;
using emsloc::Instance;
using emsloc::Matrix;
using emsloc::Plan;
using emsloc::Rational;
using emsloc::Site;

inline Rational centi(long long value) { return Rational(static_cast<long>(value)) / 100; }
inline Rational milli(long long value) { return Rational(static_cast<long>(value)) / 1000; }

struct OracleFamilyParams {
  int max_points = 12;
  int max_sites = 8;
  int max_types = 2;
  int max_periods = 3;
  int max_fleet = 3;
  int max_k = 3;
  bool allow_overload = true;
};

// Random instance within the oracle-family bounds. Travel times land
// around the response standards so coverage sets are nontrivial.
inline Instance random_oracle_instance(std::mt19937_64& rng, const OracleFamilyParams& p = {}) {
  auto draw = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  Instance instance;
  const int num_points = draw(1, p.max_points);
  const int num_sites = draw(1, p.max_sites);
  const int num_types = draw(1, p.max_types);
  const int num_periods = draw(1, p.max_periods);
  instance.num_periods = num_periods;

  int total_fleet = 0;
  for (int u = 0; u < num_types; ++u) {
    AmbulanceType type;
    type.id = u;
    type.label = "T" + std::to_string(u);
    type.fleet_size = draw(1, p.max_fleet);
    type.response_standard = centi(draw(500, 1200));
    total_fleet += type.fleet_size;
    instance.ambulance_types.push_back(std::move(type));
  }
  instance.k_max = std::min(draw(1, p.max_k), total_fleet);

  for (int j = 0; j < num_sites; ++j) instance.sites.push_back({j, draw(1, 2)});

  for (int i = 0; i < num_points; ++i) {
    emsloc::DemandPoint point;
    point.id = i;
    point.demand.assign(num_types, std::vector<Rational>(num_periods));
    point.service_time_demand.assign(num_types, std::vector<Rational>(num_periods));
    for (int u = 0; u < num_types; ++u)
      for (int t = 0; t < num_periods; ++t) {
        point.demand[u][t] = centi(draw(0, 400));
        bool overload = p.allow_overload && draw(0, 9) == 0;
        point.service_time_demand[u][t] = milli(overload ? draw(500, 2000) : draw(0, 120));
      }
    instance.demand_points.push_back(std::move(point));
  }

  instance.travel_time = Matrix(num_sites, num_points);
  for (int j = 0; j < num_sites; ++j)
    for (int i = 0; i < num_points; ++i) instance.travel_time.at(j, i) = centi(draw(0, 1600));

  instance.demand_to_demand_time = Matrix(num_points, num_points);
  for (int a = 0; a < num_points; ++a)
    for (int b = 0; b < num_points; ++b)
      instance.demand_to_demand_time.at(a, b) = a == b ? Rational(0) : centi(draw(0, 1600));

  instance.validate();
  return instance;
}

// Feasible random static baseline: opens `stations` sites and scatters the
// fleet over them, the same allocation in every period.
inline Plan random_static_baseline(std::mt19937_64& rng, const Instance& instance, int stations) {
  Plan plan = Plan::empty(instance, instance.num_periods);
  std::vector<int> sites(instance.num_sites());
  for (int j = 0; j < instance.num_sites(); ++j) sites[j] = j;
  std::shuffle(sites.begin(), sites.end(), rng);
  stations = std::min<int>(stations, instance.num_sites());
  for (int n = 0; n < stations; ++n) plan.opened.insert(sites[n]);

  std::vector<int> held(instance.num_sites(), 0);
  for (int u = 0; u < instance.num_types(); ++u) {
    int remaining = instance.ambulance_types[u].fleet_size;
    for (int n = 0; n < stations && remaining > 0; ++n) {
      int j = sites[n];
      if (held[j] >= instance.sites[j].capacity) continue;
      if (rng() % 2 == 0) continue;  // leave some capacity unused
      ++held[j];
      --remaining;
      for (int t = 0; t < instance.num_periods; ++t) plan.alloc[j][u][t] = 1;
    }
  }
  plan.validate_against(instance);
  return plan;
}

// Two spatial clusters with demand peaks in disjoint period windows and a
// fleet too small to cover both at once: relocation is provably useful.
inline Instance two_peak_instance(std::uint64_t seed, int points_per_cluster = 3,
                                  int sites_per_cluster = 2, int num_periods = 2,
                                  int fleet_per_type = 1, int num_types = 1) {
  emsloc::GeneratorConfig config;
  config.num_demand_points = 2 * points_per_cluster;
  config.num_sites = 2 * sites_per_cluster;
  config.num_periods = num_periods;
  config.seed = seed;
  config.demand_profile = emsloc::DemandProfile::kTwoPeakDiurnal;
  config.spatial_model = emsloc::SpatialModel::kClustered;
  config.ambulance_types.clear();
  for (int u = 0; u < num_types; ++u)
    config.ambulance_types.push_back({"T" + std::to_string(u), fleet_per_type, Rational(8)});
  config.site_capacity = num_types;
  config.k_max = 1;
  config.demand_scale_centi = 100;
  config.area_centiminutes = 4000;  // cluster separation ~28 min >> standard
  return emsloc::generate_instance(config);
}

}  // namespace testgen
