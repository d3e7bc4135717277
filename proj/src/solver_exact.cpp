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

#include <algorithm>
#include <chrono>
#include <numeric>

#include "emsloc/errors.hpp"
#include "emsloc/solver.hpp"
#include "structured_model.hpp"

namespace emsloc {

namespace {

using detail::CoverageGroup;
using detail::StructuredModel;
using Clock = std::chrono::steady_clock;

// Depth-first branch and bound. z variables are decided first (descending
// demand potential, open branch first); once the station layout is fixed
// the remaining x subproblems are independent per period and are solved
// period by period. y variables are never branched: each (i,u,t) group has
// a precomputed best-value ladder over its server count.
class ExactSearch {
 public:
  ExactSearch(const StructuredModel& s, double time_limit)
      : s_(s), time_limit_(time_limit), start_(Clock::now()) {}

  Solution run() {
    Solution result;
    result.values.assign(s_.model->num_vars(), 0);

    std::vector<signed char> z_state, x_state;
    if (!detail::propagate_fixes(s_, z_state, x_state)) {
      result.status = SolveStatus::kInfeasible;
      result.objective = 0;
      result.bound = 0;
      return result;
    }
    z_state_ = std::move(z_state);
    x_state_ = std::move(x_state);

    open_count_ = 0;
    for (int j = 0; j < s_.num_sites; ++j)
      if (z_state_[j] == 1) ++open_count_;

    // Optimistic per-group server counts used by the z-phase bound.
    allowed_.resize(s_.groups.size());
    zbound_ = 0;
    for (size_t g = 0; g < s_.groups.size(); ++g) {
      int count = 0;
      for (int local : s_.groups[g].x_locals)
        if (x_state_[local] != 0 && z_state_[s_.x_site(local)] != 0) ++count;
      allowed_[g] = count;
      zbound_ += s_.groups[g].value_at[count];
    }

    // Branch order: free stations by descending covered-demand potential.
    std::vector<double> potential(s_.num_sites, 0.0);
    for (size_t g = 0; g < s_.groups.size(); ++g)
      for (int local : s_.groups[g].x_locals)
        potential[s_.x_site(local)] += s_.groups[g].value_at_d.back();
    for (int j = 0; j < s_.num_sites; ++j)
      if (z_state_[j] == -1) z_order_.push_back(j);
    std::stable_sort(z_order_.begin(), z_order_.end(), [&](int a, int b) {
      if (potential[a] != potential[b]) return potential[a] > potential[b];
      return a < b;
    });
    site_potential_ = std::move(potential);

    // Baseline incumbent: every free variable at zero.
    incumbent_ = fixed_only_value();
    best_z_ = z_state_;
    best_x_.assign(x_state_.size(), 0);
    for (size_t local = 0; local < x_state_.size(); ++local)
      if (x_state_[local] == 1) best_x_[local] = 1;
    abandoned_bound_ = incumbent_;

    branch_z(0);

    // Materialize the best assignment: z, x, then decoded y.
    for (int j = 0; j < s_.num_sites; ++j)
      if (best_z_[j] == 1) result.values[j] = 1;
    for (size_t local = 0; local < best_x_.size(); ++local)
      if (best_x_[local] == 1) result.values[s_.x_var_index(static_cast<int>(local))] = 1;
    for (const CoverageGroup& group : s_.groups) {
      int servers = 0;
      for (int local : group.x_locals) servers += best_x_[local];
      int choice = group.choice_at[servers];
      if (choice >= 0) result.values[group.y_vars[choice]] = 1;
    }

    result.objective = evaluate_objective(*s_.model, result.values);
    if (result.objective != incumbent_)
      throw AuditError("exact solver: incremental objective does not match the recomputation");

    result.stats.nodes = nodes_;
    result.stats.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    if (timed_out_) {
      result.status = SolveStatus::kTimeLimit;
      result.bound = std::max(incumbent_, abandoned_bound_);
    } else {
      result.status = SolveStatus::kOptimal;
      result.bound = result.objective;
    }
    return result;
  }

 private:
  Rational fixed_only_value() const {
    Rational value(0);
    for (const CoverageGroup& group : s_.groups) {
      int servers = 0;
      for (int local : group.x_locals)
        if (x_state_[local] == 1) ++servers;
      value += group.value_at[servers];
    }
    return value;
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if (time_limit_ <= 0) return false;
    if ((nodes_ & 0x3ff) == 1 &&  // checked at node 1, then every 1024 nodes
        std::chrono::duration<double>(Clock::now() - start_).count() > time_limit_)
      timed_out_ = true;
    return timed_out_;
  }

  // ---- z phase ------------------------------------------------------

  // Excludes site j's free x variables from the optimistic counts.
  void close_site(int j, std::vector<std::pair<int, int>>& trail) {
    for (int u = 0; u < s_.num_types; ++u)
      for (int t = 0; t < s_.num_periods; ++t) {
        int local = s_.x_local(j, u, t);
        if (x_state_[local] == 0) continue;
        for (int g : s_.groups_of_x[local]) {
          zbound_ -= s_.groups[g].value_at[allowed_[g]];
          --allowed_[g];
          zbound_ += s_.groups[g].value_at[allowed_[g]];
          trail.emplace_back(g, 1);
        }
      }
  }

  void undo_closures(const std::vector<std::pair<int, int>>& trail) {
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
      int g = it->first;
      zbound_ -= s_.groups[g].value_at[allowed_[g]];
      allowed_[g] += it->second;
      zbound_ += s_.groups[g].value_at[allowed_[g]];
    }
  }

  void branch_z(size_t depth) {
    ++nodes_;
    if (out_of_time()) {
      abandoned_bound_ = std::max(abandoned_bound_, zbound_);
      return;
    }
    if (zbound_ <= incumbent_) return;
    while (depth < z_order_.size() && z_state_[z_order_[depth]] != -1) ++depth;
    if (depth == z_order_.size()) {
      solve_x_phase();
      return;
    }
    int j = z_order_[depth];

    if (open_count_ < s_.epsilon) {
      z_state_[j] = 1;
      ++open_count_;
      std::vector<std::pair<int, int>> trail;
      std::vector<int> forced;
      if (open_count_ == s_.epsilon) {
        // Budget exhausted: every undecided station is closed.
        for (size_t d = depth + 1; d < z_order_.size(); ++d) {
          int other = z_order_[d];
          if (z_state_[other] == -1) {
            z_state_[other] = 0;
            close_site(other, trail);
            forced.push_back(other);
          }
        }
      }
      branch_z(depth + 1);
      undo_closures(trail);
      for (int other : forced) z_state_[other] = -1;
      --open_count_;
      z_state_[j] = -1;
    }

    {
      z_state_[j] = 0;
      std::vector<std::pair<int, int>> trail;
      close_site(j, trail);
      branch_z(depth + 1);
      undo_closures(trail);
      z_state_[j] = -1;
    }
  }

  // ---- x phase (station layout fixed) --------------------------------

  struct PeriodState {
    int period = 0;
    std::vector<int> free_locals;       // branchable x, ordered
    std::vector<int> group_ids;         // groups living in this period
    std::vector<int> claimed;           // parallel to group_ids
    std::vector<int> avail;             // parallel to group_ids
    std::vector<int> group_slot;        // group id -> slot in this period (-1 otherwise)
    Rational value{0};                  // sum value_at[claimed]
    Rational optimistic{0};             // sum value_at[avail]
    std::vector<int> fleet_used;        // per type
    std::vector<int> cap_used;          // per site
    Rational best{-1};
    std::vector<std::uint8_t> best_assignment;  // parallel to free_locals
    std::vector<std::uint8_t> current;
  };

  void solve_x_phase() {
    std::vector<PeriodState> periods(s_.num_periods);
    for (int t = 0; t < s_.num_periods; ++t) {
      PeriodState& ps = periods[t];
      ps.period = t;
      ps.group_slot.assign(s_.groups.size(), -1);
      ps.fleet_used.assign(s_.num_types, 0);
      ps.cap_used.assign(s_.num_sites, 0);
    }

    for (size_t g = 0; g < s_.groups.size(); ++g)
      periods[s_.groups[g].t].group_ids.push_back(static_cast<int>(g));

    for (int t = 0; t < s_.num_periods; ++t) {
      PeriodState& ps = periods[t];
      for (size_t slot = 0; slot < ps.group_ids.size(); ++slot)
        ps.group_slot[ps.group_ids[slot]] = static_cast<int>(slot);
      ps.claimed.assign(ps.group_ids.size(), 0);
      ps.avail.assign(ps.group_ids.size(), 0);
    }

    for (size_t local = 0; local < x_state_.size(); ++local) {
      int j = s_.x_site(static_cast<int>(local));
      int u = s_.x_type(static_cast<int>(local));
      int t = s_.x_period(static_cast<int>(local));
      PeriodState& ps = periods[t];
      if (x_state_[local] == 1) {
        ps.fleet_used[u] += 1;
        ps.cap_used[j] += 1;
        for (int g : s_.groups_of_x[local]) ++ps.claimed[ps.group_slot[g]];
      } else if (x_state_[local] == -1 && z_state_[j] == 1) {
        ps.free_locals.push_back(static_cast<int>(local));
      }
    }

    for (int t = 0; t < s_.num_periods; ++t) {
      PeriodState& ps = periods[t];
      // Branch order within the period: type, then site potential.
      std::stable_sort(ps.free_locals.begin(), ps.free_locals.end(), [&](int a, int b) {
        int ua = s_.x_type(a), ub = s_.x_type(b);
        if (ua != ub) return ua < ub;
        double pa = site_potential_[s_.x_site(a)], pb = site_potential_[s_.x_site(b)];
        if (pa != pb) return pa > pb;
        return a < b;
      });
      for (size_t slot = 0; slot < ps.group_ids.size(); ++slot) {
        ps.avail[slot] = ps.claimed[slot];
        ps.value += s_.groups[ps.group_ids[slot]].value_at[ps.claimed[slot]];
      }
      for (int local : ps.free_locals)
        for (int g : s_.groups_of_x[local]) ++ps.avail[ps.group_slot[g]];
      ps.optimistic = 0;
      for (size_t slot = 0; slot < ps.group_ids.size(); ++slot)
        ps.optimistic += s_.groups[ps.group_ids[slot]].value_at[ps.avail[slot]];
      ps.current.assign(ps.free_locals.size(), 0);
    }

    // Periods are coupled only through z, so solve them in sequence,
    // pruning against the incumbent with optimistic future-period bounds.
    std::vector<Rational> future_ub(s_.num_periods + 1, Rational(0));
    for (int t = s_.num_periods - 1; t >= 0; --t)
      future_ub[t] = future_ub[t + 1] + periods[t].optimistic;

    Rational prefix(0);
    for (int t = 0; t < s_.num_periods; ++t) {
      PeriodState& ps = periods[t];
      prune_threshold_ = incumbent_ - prefix - future_ub[t + 1];
      branch_x(ps, 0);
      if (timed_out_) {
        Rational open_bound = prefix + ps.optimistic + future_ub[t + 1];
        if (open_bound > abandoned_bound_) abandoned_bound_ = open_bound;
        return;
      }
      if (ps.best < 0) return;  // no completion can beat the incumbent
      prefix += ps.best;
      if (t + 1 < s_.num_periods && prefix + future_ub[t + 1] <= incumbent_) return;
    }

    if (prefix > incumbent_) {
      incumbent_ = prefix;
      best_z_ = z_state_;
      for (size_t local = 0; local < x_state_.size(); ++local)
        best_x_[local] = x_state_[local] == 1 ? 1 : 0;
      for (const PeriodState& ps : periods)
        for (size_t n = 0; n < ps.free_locals.size(); ++n)
          best_x_[ps.free_locals[n]] = ps.best_assignment[n];
    }
  }

  void branch_x(PeriodState& ps, size_t idx) {
    ++nodes_;
    if (out_of_time()) return;
    if (ps.optimistic <= prune_threshold_) return;
    if (idx == ps.free_locals.size()) {
      if (ps.value > ps.best && ps.value > prune_threshold_) {
        ps.best = ps.value;
        ps.best_assignment = ps.current;
      }
      return;
    }
    int local = ps.free_locals[idx];
    int j = s_.x_site(local);
    int u = s_.x_type(local);

    if (ps.fleet_used[u] < s_.fleet[u][ps.period] && ps.cap_used[j] < s_.capacity[j]) {
      ps.fleet_used[u] += 1;
      ps.cap_used[j] += 1;
      ps.current[idx] = 1;
      Rational value_delta(0);
      for (int g : s_.groups_of_x[local]) {
        int slot = ps.group_slot[g];
        const auto& ladder = s_.groups[g].value_at;
        value_delta += ladder[ps.claimed[slot] + 1] - ladder[ps.claimed[slot]];
        ++ps.claimed[slot];
      }
      ps.value += value_delta;
      branch_x(ps, idx + 1);
      ps.value -= value_delta;
      for (int g : s_.groups_of_x[local]) --ps.claimed[ps.group_slot[g]];
      ps.current[idx] = 0;
      ps.fleet_used[u] -= 1;
      ps.cap_used[j] -= 1;
    }

    {
      Rational bound_delta(0);
      for (int g : s_.groups_of_x[local]) {
        int slot = ps.group_slot[g];
        const auto& ladder = s_.groups[g].value_at;
        bound_delta += ladder[ps.avail[slot] - 1] - ladder[ps.avail[slot]];
        --ps.avail[slot];
      }
      ps.optimistic += bound_delta;
      branch_x(ps, idx + 1);
      ps.optimistic -= bound_delta;
      for (int g : s_.groups_of_x[local]) ++ps.avail[ps.group_slot[g]];
    }
  }

  const StructuredModel& s_;
  double time_limit_;
  Clock::time_point start_;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;

  std::vector<signed char> z_state_;
  std::vector<signed char> x_state_;
  std::vector<int> z_order_;
  std::vector<double> site_potential_;
  std::vector<int> allowed_;
  Rational zbound_{0};
  int open_count_ = 0;

  Rational incumbent_{-1};
  Rational abandoned_bound_{-1};
  Rational prune_threshold_{-1};
  std::vector<signed char> best_z_;
  std::vector<std::uint8_t> best_x_;
};

}  // namespace

std::string solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeLimit: return "time-limit";
  }
  throw Error("unreachable status");
}

int Solution::value_of(const ModelSpec& model, const VarId& id) const {
  int index = model.var_index(id);
  if (index < 0) throw Error("value_of: variable not in model");
  return values[index];
}

Solution solve_exact(const ModelSpec& model, double time_limit_seconds) {
  detail::StructuredModel structured = detail::parse_structured(model);
  ExactSearch search(structured, time_limit_seconds);
  return search.run();
}

}  // namespace emsloc
