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

#include "emsloc/coverage.hpp"

#include "emsloc/errors.hpp"

namespace emsloc {

CoverageSets build_coverage_sets(const Instance& instance) {
  const int num_points = instance.num_points();
  const int num_sites = instance.num_sites();
  const int num_types = instance.num_types();

  CoverageSets sets;
  sets.site_covers.assign(num_points, std::vector<std::vector<int>>(num_types));
  sets.point_neighborhood.assign(num_points, std::vector<std::vector<int>>(num_types));

  for (int i = 0; i < num_points; ++i) {
    for (int u = 0; u < num_types; ++u) {
      const Rational& standard = instance.ambulance_types[u].response_standard;
      for (int j = 0; j < num_sites; ++j)
        if (instance.travel_time.at(j, i) <= standard) sets.site_covers[i][u].push_back(j);
      for (int other = 0; other < num_points; ++other)
        if (instance.demand_to_demand_time.at(i, other) <= standard)
          sets.point_neighborhood[i][u].push_back(other);
    }
  }
  return sets;
}

Rational busy_fraction(const Instance& instance, const CoverageSets& sets, int i, int u, int k,
                       int t) {
  if (k < 1 || k > instance.k_max) throw Error("busy_fraction: k out of range");
  Rational sum(0);
  for (int j : sets.neighborhood_of(i, u)) sum += instance.service_demand(j, u, t);
  return sum / k;
}

Rational reliability(const Rational& busy, int k) {
  if (k < 1) throw Error("reliability: k must be >= 1");
  return Rational(1) - pow_rational(clamp01(busy), static_cast<unsigned>(k));
}

ReliabilityTable::ReliabilityTable(int num_points, int num_types, int k_max, int num_periods)
    : num_points_(num_points),
      num_types_(num_types),
      k_max_(k_max),
      num_periods_(num_periods),
      busy_(static_cast<size_t>(num_points) * num_types * k_max * num_periods),
      q_(static_cast<size_t>(num_points) * num_types * k_max * num_periods) {}

std::string ReliabilityTable::to_csv() const {
  std::string out = "i,u,k,t,b,q\n";
  for (int i = 0; i < num_points_; ++i)
    for (int u = 0; u < num_types_; ++u)
      for (int k = 1; k <= k_max_; ++k)
        for (int t = 0; t < num_periods_; ++t) {
          out += std::to_string(i) + "," + std::to_string(u) + "," + std::to_string(k) + "," +
                 std::to_string(t) + "," +
                 shortest_double_string(rational_to_double(busy(i, u, k, t))) + "," +
                 shortest_double_string(rational_to_double(q(i, u, k, t))) + "\n";
        }
  return out;
}

ReliabilityTable build_reliability_table(const Instance& instance, const CoverageSets& sets) {
  ReliabilityTable table(instance.num_points(), instance.num_types(), instance.k_max,
                         instance.num_periods);
  for (int i = 0; i < instance.num_points(); ++i) {
    for (int u = 0; u < instance.num_types(); ++u) {
      for (int t = 0; t < instance.num_periods; ++t) {
        Rational neighborhood_sum(0);
        for (int j : sets.neighborhood_of(i, u))
          neighborhood_sum += instance.service_demand(j, u, t);
        for (int k = 1; k <= instance.k_max; ++k) {
          Rational b = neighborhood_sum / k;
          table.busy_mut(i, u, k, t) = b;
          table.q_mut(i, u, k, t) = reliability(b, k);
        }
      }
    }
  }
  return table;
}

}  // namespace emsloc
