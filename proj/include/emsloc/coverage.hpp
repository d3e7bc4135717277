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

#include <string>
#include <vector>

#include "emsloc/instance.hpp"

namespace emsloc {

/// The combinatorial substrate shared by all four models: which sites can
/// serve each demand point, and which demand points form each point's
/// neighborhood, per ambulance type. Boundary ties (time == standard)
/// count as covered.
struct CoverageSets {
  /// site_covers[i][u] = sorted sites j with travel_time[j][i] <= S_u.
  std::vector<std::vector<std::vector<int>>> site_covers;
  /// point_neighborhood[i][u] = sorted points i' with time(i -> i') <= S_u.
  /// Always contains i itself (zero diagonal).
  std::vector<std::vector<std::vector<int>>> point_neighborhood;

  const std::vector<int>& sites_for(int i, int u) const { return site_covers[i][u]; }
  const std::vector<int>& neighborhood_of(int i, int u) const { return point_neighborhood[i][u]; }
};

CoverageSets build_coverage_sets(const Instance& instance);

/// Raw area-specific busy fraction: neighborhood service-time demand
/// divided by k. May exceed 1; clamping happens in reliability().
Rational busy_fraction(const Instance& instance, const CoverageSets& sets, int i, int u, int k,
                       int t);

/// 1 - min(max(b,0),1)^k. Always in [0,1].
Rational reliability(const Rational& busy, int k);

/// Precomputed b and q over (point, type, k, period), k in 1..k_max.
/// Eagerly built; entries are immutable and shared by the solvers.
class ReliabilityTable {
 public:
  ReliabilityTable() = default;
  ReliabilityTable(int num_points, int num_types, int k_max, int num_periods);

  int k_max() const { return k_max_; }
  const Rational& busy(int i, int u, int k, int t) const { return busy_[index(i, u, k, t)]; }
  const Rational& q(int i, int u, int k, int t) const { return q_[index(i, u, k, t)]; }

  Rational& busy_mut(int i, int u, int k, int t) { return busy_[index(i, u, k, t)]; }
  Rational& q_mut(int i, int u, int k, int t) { return q_[index(i, u, k, t)]; }

  /// CSV with columns i,u,k,t,b,q.
  std::string to_csv() const;

 private:
  size_t index(int i, int u, int k, int t) const {
    return ((static_cast<size_t>(i) * num_types_ + u) * k_max_ + (k - 1)) * num_periods_ + t;
  }

  int num_points_ = 0;
  int num_types_ = 0;
  int k_max_ = 0;
  int num_periods_ = 0;
  std::vector<Rational> busy_;
  std::vector<Rational> q_;
};

ReliabilityTable build_reliability_table(const Instance& instance, const CoverageSets& sets);

}  // namespace emsloc
