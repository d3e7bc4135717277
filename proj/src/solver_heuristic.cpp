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
#include <random>

#include "emsloc/errors.hpp"
#include "emsloc/solver.hpp"
#include "structured_model.hpp"

namespace emsloc {

namespace {

using detail::CoverageGroup;
using detail::StructuredModel;

constexpr double kGainEps = 1e-9;

// Greedy construction plus first-improvement local search. Scoring runs on
// double mirrors of the exact ladders; the final objective is recomputed
// in rationals, so scoring error can only cost solution quality, never
// correctness.
class HeuristicSearch {
 public:
  HeuristicSearch(const StructuredModel& s, const HeuristicConfig& config)
      : s_(s), config_(config), rng_(config.seed) {}

  Solution run() {
    Solution result;
    result.values.assign(s_.model->num_vars(), 0);

    if (!detail::propagate_fixes(s_, z_state_, x_state_)) {
      result.status = SolveStatus::kInfeasible;
      result.objective = 0;
      result.bound = 0;
      return result;
    }
    auto start = std::chrono::steady_clock::now();

    placed_.assign(x_state_.size(), 0);
    servers_.assign(s_.groups.size(), 0);
    fleet_used_.assign(s_.num_types, std::vector<int>(s_.num_periods, 0));
    cap_used_.assign(s_.num_sites, std::vector<int>(s_.num_periods, 0));
    open_.assign(s_.num_sites, 0);
    open_count_ = 0;
    for (int j = 0; j < s_.num_sites; ++j)
      if (z_state_[j] == 1) {
        open_[j] = 1;
        ++open_count_;
      }
    for (size_t local = 0; local < x_state_.size(); ++local)
      if (x_state_[local] == 1) place(static_cast<int>(local));

    if (config_.warm_start != nullptr) apply_warm_start(*config_.warm_start);
    greedy(false);
    local_search();

    // Iterated local search: kick the incumbent, rebuild, descend, keep
    // the best state. Small models get many restarts out of the budget;
    // at full scale the construction itself consumes most of it.
    State best = snapshot();
    double best_value = current_value();
    while (!budget_spent()) {
      perturb();
      greedy(true);
      local_search();
      double value = current_value();
      if (value > best_value + kGainEps) {
        best = snapshot();
        best_value = value;
      } else {
        restore(best);
      }
    }
    restore(best);

    for (int j = 0; j < s_.num_sites; ++j)
      if (open_[j]) result.values[j] = 1;
    for (size_t local = 0; local < placed_.size(); ++local)
      if (placed_[local]) result.values[s_.x_var_index(static_cast<int>(local))] = 1;
    for (size_t g = 0; g < s_.groups.size(); ++g) {
      const CoverageGroup& group = s_.groups[g];
      int choice = group.choice_at[servers_[g]];
      if (choice >= 0) result.values[group.y_vars[choice]] = 1;
    }

    result.objective = evaluate_objective(*s_.model, result.values);
    result.status = SolveStatus::kFeasible;
    result.bound = s_.root_upper_bound();
    result.stats.nodes = evaluations_;
    result.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  // ---- state snapshots ---------------------------------------------------

  struct State {
    std::vector<std::uint8_t> placed;
    std::vector<std::uint8_t> open;
    std::vector<int> servers;
    std::vector<std::vector<int>> fleet_used;
    std::vector<std::vector<int>> cap_used;
    int open_count = 0;
  };

  State snapshot() const {
    return {placed_, open_, servers_, fleet_used_, cap_used_, open_count_};
  }

  void restore(const State& state) {
    placed_ = state.placed;
    open_ = state.open;
    servers_ = state.servers;
    fleet_used_ = state.fleet_used;
    cap_used_ = state.cap_used;
    open_count_ = state.open_count;
  }

  double current_value() const {
    double value = 0.0;
    for (size_t g = 0; g < s_.groups.size(); ++g)
      value += s_.groups[g].value_at_d[servers_[g]];
    return value;
  }

  // Random kick: drop a chunk of the unpinned vehicles and close the free
  // sites that emptied out, so the rebuild can choose a new layout.
  void perturb() {
    std::vector<int> removable_locals;
    for (int local = 0; local < static_cast<int>(placed_.size()); ++local)
      if (removable(local)) removable_locals.push_back(local);
    if (removable_locals.empty()) return;
    std::shuffle(removable_locals.begin(), removable_locals.end(), rng_);
    size_t kicks = 1 + removable_locals.size() / 4;
    for (size_t n = 0; n < kicks && n < removable_locals.size(); ++n)
      unplace(removable_locals[n]);
    for (int j = 0; j < s_.num_sites; ++j) {
      if (!open_[j] || z_state_[j] == 1) continue;
      bool empty = true;
      for (int u = 0; u < s_.num_types && empty; ++u)
        for (int t = 0; t < s_.num_periods && empty; ++t)
          if (placed_[s_.x_local(j, u, t)]) empty = false;
      if (empty && rng() % 2 == 0) {
        open_[j] = 0;
        --open_count_;
      }
    }
  }

  std::uint64_t rng() { return rng_(); }

  // ---- state transitions ----------------------------------------------

  void place(int local) {
    placed_[local] = 1;
    fleet_used_[s_.x_type(local)][s_.x_period(local)] += 1;
    cap_used_[s_.x_site(local)][s_.x_period(local)] += 1;
    for (int g : s_.groups_of_x[local]) ++servers_[g];
  }

  void unplace(int local) {
    placed_[local] = 0;
    fleet_used_[s_.x_type(local)][s_.x_period(local)] -= 1;
    cap_used_[s_.x_site(local)][s_.x_period(local)] -= 1;
    for (int g : s_.groups_of_x[local]) --servers_[g];
  }

  double add_gain(int local) const {
    double gain = 0.0;
    for (int g : s_.groups_of_x[local]) {
      const auto& ladder = s_.groups[g].value_at_d;
      gain += ladder[servers_[g] + 1] - ladder[servers_[g]];
    }
    return gain;
  }

  double remove_gain(int local) const {
    double gain = 0.0;
    for (int g : s_.groups_of_x[local]) {
      const auto& ladder = s_.groups[g].value_at_d;
      gain += ladder[servers_[g] - 1] - ladder[servers_[g]];
    }
    return gain;
  }

  // Placement is allowed when the vehicle slot is free, the fix rows allow
  // it, fleet and capacity have room, and the site is open or openable
  // within the station budget.
  bool can_place(int local) const {
    if (placed_[local] || x_state_[local] == 0) return false;
    int j = s_.x_site(local);
    int u = s_.x_type(local);
    int t = s_.x_period(local);
    if (fleet_used_[u][t] >= s_.fleet[u][t]) return false;
    if (cap_used_[j][t] >= s_.capacity[j]) return false;
    if (!open_[j]) {
      if (z_state_[j] == 0) return false;
      if (open_count_ >= s_.epsilon) return false;
    }
    return true;
  }

  void ensure_open(int j) {
    if (!open_[j]) {
      open_[j] = 1;
      ++open_count_;
    }
  }

  bool removable(int local) const { return placed_[local] && x_state_[local] != 1; }

  // ---- construction ----------------------------------------------------

  void apply_warm_start(const Plan& plan) {
    if (static_cast<int>(plan.alloc.size()) != s_.num_sites ||
        plan.num_periods != s_.num_periods)
      return;  // sweep passes plans from the same model family; ignore others
    for (int j : plan.opened) {
      if (j < 0 || j >= s_.num_sites) continue;
      if (!open_[j] && z_state_[j] != 0 && open_count_ < s_.epsilon) ensure_open(j);
    }
    for (int j = 0; j < s_.num_sites; ++j)
      for (int u = 0; u < s_.num_types; ++u)
        for (int t = 0; t < s_.num_periods; ++t)
          if (plan.alloc[j][u][t] == 1) {
            int local = s_.x_local(j, u, t);
            if (open_[j] && can_place(local)) place(local);
          }
  }

  // Repeatedly add the allocation with the largest marginal gain. Ties go
  // to the lowest local index (scan order). A placement only changes gains
  // within its own period, so periods are filled one at a time. Restarts
  // pick randomly among near-best candidates instead, so repeated rebuilds
  // explore different constructions.
  void greedy(bool randomized) {
    for (int t = 0; t < s_.num_periods; ++t) {
      while (true) {
        int best_local = -1;
        double best_gain = kGainEps;
        candidates_.clear();
        for (int j = 0; j < s_.num_sites; ++j)
          for (int u = 0; u < s_.num_types; ++u) {
            int local = s_.x_local(j, u, t);
            if (!can_place(local)) continue;
            ++evaluations_;
            double gain = add_gain(local);
            if (gain > best_gain) {
              best_gain = gain;
              best_local = local;
            }
            if (randomized && gain > kGainEps) candidates_.push_back({local, gain});
          }
        if (best_local < 0) break;
        int chosen = best_local;
        if (randomized) {
          near_best_.clear();
          for (const auto& [local, gain] : candidates_)
            if (gain >= 0.7 * best_gain) near_best_.push_back(local);
          chosen = near_best_[rng_() % near_best_.size()];
        }
        ensure_open(s_.x_site(chosen));
        place(chosen);
      }
    }
  }

  // ---- local search -----------------------------------------------------

  bool try_relocate(int local) {
    if (!removable(local)) return false;
    int u = s_.x_type(local);
    int t = s_.x_period(local);
    double gain_out = remove_gain(local);
    unplace(local);
    int chosen = -1;
    for (int j = 0; j < s_.num_sites; ++j) {
      if (j == s_.x_site(local)) continue;
      int target = s_.x_local(j, u, t);
      ++evaluations_;
      if (!can_place(target)) continue;
      double delta = gain_out + add_gain(target);
      if (delta > kGainEps) {
        chosen = target;
        break;  // first improvement
      }
    }
    if (chosen >= 0) {
      ensure_open(s_.x_site(chosen));
      place(chosen);
      return true;
    }
    place(local);
    return false;
  }

  bool try_type_swap(int local) {
    if (!removable(local)) return false;
    int j = s_.x_site(local);
    int t = s_.x_period(local);
    double gain_out = remove_gain(local);
    unplace(local);
    int chosen = -1;
    for (int u2 = 0; u2 < s_.num_types; ++u2) {
      if (u2 == s_.x_type(local)) continue;
      int target = s_.x_local(j, u2, t);
      ++evaluations_;
      if (!can_place(target)) continue;
      double delta = gain_out + add_gain(target);
      if (delta > kGainEps) {
        chosen = target;
        break;
      }
    }
    if (chosen >= 0) {
      place(chosen);
      return true;
    }
    place(local);
    return false;
  }

  // Swap two different-type vehicles between their sites (same period).
  // Capacity and fleet counts are preserved, only coverage changes; this
  // escapes the greedy trap where one type grabbed a contested site.
  bool try_exchange(int local) {
    if (!removable(local)) return false;
    int j1 = s_.x_site(local);
    int u1 = s_.x_type(local);
    int t = s_.x_period(local);
    for (int j2 = 0; j2 < s_.num_sites; ++j2) {
      if (j2 == j1) continue;
      for (int u2 = 0; u2 < s_.num_types; ++u2) {
        if (u2 == u1) continue;
        int other = s_.x_local(j2, u2, t);
        if (!removable(other)) continue;
        int into_j1 = s_.x_local(j1, u2, t);
        int into_j2 = s_.x_local(j2, u1, t);
        if (placed_[into_j1] || placed_[into_j2]) continue;
        ++evaluations_;
        double delta = remove_gain(local);
        unplace(local);
        delta += remove_gain(other);
        unplace(other);
        if (can_place(into_j1) && can_place(into_j2)) {
          delta += add_gain(into_j1);
          place(into_j1);
          delta += add_gain(into_j2);
          place(into_j2);
          if (delta > kGainEps) return true;
          unplace(into_j2);
          unplace(into_j1);
        }
        place(other);
        place(local);
      }
    }
    return false;
  }

  // Close site A and move its whole schedule onto a closed site B.
  bool try_site_pair(int site_a) {
    if (!open_[site_a] || z_state_[site_a] == 1) return false;
    std::vector<int> moved;
    for (int u = 0; u < s_.num_types; ++u)
      for (int t = 0; t < s_.num_periods; ++t) {
        int local = s_.x_local(site_a, u, t);
        if (placed_[local]) {
          if (x_state_[local] == 1) return false;  // pinned vehicle, cannot close
          moved.push_back(local);
        }
      }

    double gain_out = 0.0;
    for (int local : moved) {
      gain_out += remove_gain(local);
      unplace(local);
    }
    open_[site_a] = 0;
    --open_count_;

    for (int site_b = 0; site_b < s_.num_sites; ++site_b) {
      if (site_b == site_a || open_[site_b] || z_state_[site_b] == 0) continue;
      ++evaluations_;
      bool fits = true;
      double gain_in = 0.0;
      std::vector<int> landed;
      for (int local : moved) {
        int target = s_.x_local(site_b, s_.x_type(local), s_.x_period(local));
        if (!can_place(target)) {
          fits = false;
          break;
        }
        gain_in += add_gain(target);
        place(target);
        landed.push_back(target);
      }
      if (fits && gain_out + gain_in > kGainEps) {
        ensure_open(site_b);
        return true;
      }
      for (auto it = landed.rbegin(); it != landed.rend(); ++it) unplace(*it);
      if (budget_spent()) break;
    }

    open_[site_a] = 1;
    ++open_count_;
    for (int local : moved) place(local);
    return false;
  }

  bool budget_spent() const { return evaluations_ >= config_.budget; }

  void local_search() {
    std::vector<int> anchors(placed_.size());
    for (size_t n = 0; n < anchors.size(); ++n) anchors[n] = static_cast<int>(n);
    std::vector<int> sites(s_.num_sites);
    for (int j = 0; j < s_.num_sites; ++j) sites[j] = j;

    bool improved = true;
    while (improved && !budget_spent()) {
      improved = false;
      std::shuffle(anchors.begin(), anchors.end(), rng_);
      for (int local : anchors) {
        if (budget_spent()) return;
        ++evaluations_;
        if (try_relocate(local)) improved = true;
        if (try_type_swap(local)) improved = true;
        if (try_exchange(local)) improved = true;
      }
      std::shuffle(sites.begin(), sites.end(), rng_);
      for (int j : sites) {
        if (budget_spent()) return;
        if (try_site_pair(j)) improved = true;
      }
    }
  }

  const StructuredModel& s_;
  const HeuristicConfig& config_;
  std::mt19937_64 rng_;

  std::vector<signed char> z_state_;
  std::vector<signed char> x_state_;
  std::vector<std::uint8_t> placed_;
  std::vector<std::uint8_t> open_;
  std::vector<int> servers_;
  std::vector<std::vector<int>> fleet_used_;  // [u][t]
  std::vector<std::vector<int>> cap_used_;    // [j][t]
  int open_count_ = 0;
  std::uint64_t evaluations_ = 0;
  std::vector<std::pair<int, double>> candidates_;
  std::vector<int> near_best_;
};

}  // namespace

Solution solve_heuristic(const ModelSpec& model, const HeuristicConfig& config) {
  detail::StructuredModel structured = detail::parse_structured(model);
  HeuristicSearch search(structured, config);
  return search.run();
}

Solution solve_heuristic(const ModelSpec& model, std::uint64_t seed, std::uint64_t budget) {
  HeuristicConfig config;
  config.seed = seed;
  config.budget = budget;
  return solve_heuristic(model, config);
}

}  // namespace emsloc
