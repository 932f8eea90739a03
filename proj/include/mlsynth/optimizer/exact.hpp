// Copyright 2026 The mlsynth Authors
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

// Exact branch-and-bound for toy instances.
//
// Branches demand by demand (descending rate) over every simple LSR sequence
// from source to destination; the LSR set is the demand endpoints plus every
// node some route transits, and the logical-link set is the union of route
// hops. Between one pair of LSRs only the cheapest usable realization is
// branched on: moving all traffic of a pair onto one link at the lowest
// per-channel price never costs more, since ceil(a/c) + ceil(b/c) >=
// ceil((a+b)/c). Partial cost never decreases as demands are added, so a
// partial state at or above the incumbent is pruned.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mlsynth/builder.hpp"
#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/optimizer/evaluate.hpp"
#include "mlsynth/routing.hpp"

namespace mlsynth {

struct ExactLimits {
  int max_nodes = 5;
  int max_demands = 4;
};

namespace exact_detail {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const MultilayerGraph& mlg) : inst_(inst) {
    n_ = static_cast<std::size_t>(inst.node_count());
    for (const auto& e : mlg.edges) {
      if (mlg.is_logical_link(e)) links_.push_back({e.id, e.u.node, e.v.node, e.weight});
    }
    const auto usable = usable_links_per_demand(mlg, inst.demands.size());
    best_link_.assign(inst.demands.size(), std::vector<int>(n_ * n_, -1));
    for (std::size_t d = 0; d < inst.demands.size(); ++d) {
      for (int l = 0; l < static_cast<int>(links_.size()); ++l) {
        const Link& link = links_[static_cast<std::size_t>(l)];
        if (!usable[d].count(link.id)) continue;
        for (const auto& [x, y] : {std::pair(link.a, link.b), std::pair(link.b, link.a)}) {
          int& slot = best_link_[d][static_cast<std::size_t>(x) * n_ + static_cast<std::size_t>(y)];
          if (slot < 0 || link.price < links_[static_cast<std::size_t>(slot)].price) slot = l;
        }
      }
    }
    order_.resize(inst.demands.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t x, std::size_t y) { return inst.demands[x].rate > inst.demands[y].rate; });
  }

  void solve() {
    load_.assign(links_.size(), 0.0);
    refs_.assign(n_, 0);
    routes_.assign(inst_.demands.size(), {});
    cost_ = 0;
    for (const auto& d : inst_.demands) {
      for (const NodeIndex v : {d.src, d.dst}) {
        if (refs_[static_cast<std::size_t>(v)]++ == 0) cost_ += inst_.cost.lsr_cost[static_cast<std::size_t>(v)];
      }
    }
    place(0);
  }

  bool found() const { return best_cost_ != kInf; }
  Cost best_cost() const { return best_cost_; }

  std::vector<NodeIndex> best_lsrs() const { return best_lsrs_; }

  FlowAssignment best_flow() const {
    FlowAssignment fa;
    for (std::size_t d = 0; d < best_routes_.size(); ++d) {
      std::vector<EdgeId> ids;
      for (const int l : best_routes_[d]) {
        ids.push_back(links_[static_cast<std::size_t>(l)].id);
        fa.link_load[links_[static_cast<std::size_t>(l)].id] += inst_.demands[d].rate;
      }
      fa.routes.emplace(d, std::move(ids));
    }
    return fa;
  }

 private:
  static constexpr Cost kInf = std::numeric_limits<Cost>::max();

  struct Link {
    EdgeId id;
    NodeIndex a;
    NodeIndex b;
    Cost price;
  };

  Cost link_cost(int l, Bandwidth load) const {
    return channels_for(load, inst_.cost.channel_capacity) * links_[static_cast<std::size_t>(l)].price;
  }

  void place(std::size_t i) {
    if (i == order_.size()) {
      if (cost_ < best_cost_) {
        best_cost_ = cost_;
        best_routes_ = routes_;
        best_lsrs_.clear();
        for (std::size_t v = 0; v < n_; ++v) {
          if (refs_[v] > 0) best_lsrs_.push_back(static_cast<NodeIndex>(v));
        }
      }
      return;
    }
    const std::size_t d = order_[i];
    std::vector<char> visited(n_, 0);
    visited[static_cast<std::size_t>(inst_.demands[d].src)] = 1;
    walk(i, d, inst_.demands[d].src, visited);
  }

  void walk(std::size_t i, std::size_t d, NodeIndex at, std::vector<char>& visited) {
    const Demand& dem = inst_.demands[d];
    for (std::size_t next = 0; next < n_; ++next) {
      if (visited[next]) continue;
      const int l = best_link_[d][static_cast<std::size_t>(at) * n_ + next];
      if (l < 0) continue;
      const bool arrived = static_cast<NodeIndex>(next) == dem.dst;
      const Cost before = cost_;
      Bandwidth& load = load_[static_cast<std::size_t>(l)];
      cost_ += link_cost(l, load + dem.rate) - link_cost(l, load);
      load += dem.rate;
      if (!arrived && refs_[next]++ == 0) cost_ += inst_.cost.lsr_cost[next];
      routes_[d].push_back(l);

      if (cost_ < best_cost_) {
        if (arrived) {
          place(i + 1);
        } else {
          visited[next] = 1;
          walk(i, d, static_cast<NodeIndex>(next), visited);
          visited[next] = 0;
        }
      }

      routes_[d].pop_back();
      if (!arrived) --refs_[next];
      load -= dem.rate;
      if (load < kLoadEpsilon) load = 0;
      cost_ = before;
    }
  }

  const Instance& inst_;
  std::size_t n_ = 0;
  std::vector<Link> links_;
  std::vector<std::vector<int>> best_link_;  // [demand][from * n + to]
  std::vector<std::size_t> order_;

  std::vector<Bandwidth> load_;
  std::vector<int> refs_;
  std::vector<std::vector<int>> routes_;
  Cost cost_ = 0;

  Cost best_cost_ = kInf;
  std::vector<std::vector<int>> best_routes_;
  std::vector<NodeIndex> best_lsrs_;
};

}  // namespace exact_detail

/// Provably minimum-cost solution. Logical link ids refer to
/// build_redundant_mlg(inst, {k_paths = all simple paths}).
inline Solution solve_exact(const Instance& inst, const ExactLimits& limits = {}) {
  validate_instance(inst);
  if (inst.node_count() > limits.max_nodes || static_cast<std::int64_t>(inst.demands.size()) > limits.max_demands) {
    throw Error(ErrorCode::kLimitsExceeded,
                std::to_string(inst.node_count()) + " nodes / " + std::to_string(inst.demands.size()) +
                    " demands exceed the exact solver limits (" + std::to_string(limits.max_nodes) + " / " +
                    std::to_string(limits.max_demands) + ")");
  }
  BuilderParams params;
  params.k_paths = BuilderParams::kAllPaths;
  const MultilayerGraph mlg = build_redundant_mlg(inst, params);
  exact_detail::BranchAndBound bnb(inst, mlg);
  bnb.solve();
  if (!bnb.found()) throw Error(ErrorCode::kUnroutable, "no feasible overlay");
  return make_solution(inst, mlg, bnb.best_lsrs(), bnb.best_flow());
}

}  // namespace mlsynth
