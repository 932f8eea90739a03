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

// Routing of demands over a fixed overlay and conversion of aggregate link
// loads into whole channels.

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/mlg_model.hpp"
#include "mlsynth/solution.hpp"

namespace mlsynth {

// A chosen overlay: LSR nodes and the logical links (Mpls edge ids) between
// them.
struct OverlaySelection {
  std::vector<NodeIndex> lsr_nodes;
  std::vector<EdgeId> logical_links;
};

/// Logical links each demand may use, read from its flow layer.
inline std::vector<std::set<EdgeId>> usable_links_per_demand(const MultilayerGraph& mlg, std::size_t demand_count) {
  std::vector<std::set<EdgeId>> usable(demand_count);
  for (const auto& e : mlg.edges) {
    if (e.kind != EdgeKind::kIntraLayer || e.u.layer.kind != LayerKind::kFlow || !e.mirrors) continue;
    const std::size_t d = *e.u.layer.flow_index;
    if (d < demand_count) usable[d].insert(*e.mirrors);
  }
  return usable;
}

/// Routes every demand on its shortest path through the selected Mpls
/// subgraph, link length = transport hops of its realization. Equal-length
/// paths are resolved by lowest node-id sequence, then lowest link id.
/// Demands are handled in descending rate, ties by ordinal.
inline FlowAssignment route_flows(const Instance& inst, const MultilayerGraph& mlg, const OverlaySelection& selection) {
  const auto n = static_cast<std::size_t>(inst.node_count());
  const auto rank = node_ranks(inst);
  std::vector<char> selected(n, 0);
  for (const NodeIndex v : selection.lsr_nodes) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw Error(ErrorCode::kInfeasibleSolution, "selected LSR " + std::to_string(v) + " is not a node");
    }
    selected[static_cast<std::size_t>(v)] = 1;
  }

  struct Arc {
    NodeIndex to;
    EdgeId link;
    long length;
  };
  std::vector<std::vector<Arc>> adjacency(n);
  FlowAssignment fa;
  for (const EdgeId id : selection.logical_links) {
    const MlgEdge* e = mlg.find_edge(id);
    if (e == nullptr || !mlg.is_logical_link(*e)) {
      throw Error(ErrorCode::kUnknownLogicalLink, "logical link " + std::to_string(id) + " not in graph");
    }
    if (!selected[static_cast<std::size_t>(e->u.node)] || !selected[static_cast<std::size_t>(e->v.node)]) {
      throw Error(ErrorCode::kInfeasibleSolution,
                  "logical link " + std::to_string(id) + " touches a node without an LSR");
    }
    const auto length = static_cast<long>(e->realization.size());
    adjacency[static_cast<std::size_t>(e->u.node)].push_back({e->v.node, id, length});
    adjacency[static_cast<std::size_t>(e->v.node)].push_back({e->u.node, id, length});
    fa.link_load.emplace(id, 0.0);
  }
  for (auto& arcs : adjacency) {
    std::sort(arcs.begin(), arcs.end(), [&](const Arc& x, const Arc& y) {
      return rank[static_cast<std::size_t>(x.to)] != rank[static_cast<std::size_t>(y.to)]
                 ? rank[static_cast<std::size_t>(x.to)] < rank[static_cast<std::size_t>(y.to)]
                 : x.link < y.link;
    });
  }

  const auto usable = usable_links_per_demand(mlg, inst.demands.size());
  std::vector<std::size_t> order(inst.demands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return inst.demands[x].rate > inst.demands[y].rate; });

  constexpr long kInf = std::numeric_limits<long>::max();
  for (const std::size_t d : order) {
    const Demand& dem = inst.demands[d];
    const auto unroutable = [&] {
      return Error(ErrorCode::kUnroutable, "demand " + std::to_string(d) + " has no path in the selected overlay",
                   {"UNROUTABLE(" + std::to_string(d) + ")"});
    };
    if (!selected[static_cast<std::size_t>(dem.src)] || !selected[static_cast<std::size_t>(dem.dst)]) throw unroutable();
    const auto& allowed = usable[d];

    // Distances to the destination, then a greedy walk along tight arcs.
    std::vector<long> dist(n, kInf);
    using Entry = std::pair<long, NodeIndex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[static_cast<std::size_t>(dem.dst)] = 0;
    heap.push({0, dem.dst});
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du != dist[static_cast<std::size_t>(u)]) continue;
      for (const Arc& arc : adjacency[static_cast<std::size_t>(u)]) {
        if (!allowed.count(arc.link)) continue;
        const long cand = du + arc.length;
        if (cand < dist[static_cast<std::size_t>(arc.to)]) {
          dist[static_cast<std::size_t>(arc.to)] = cand;
          heap.push({cand, arc.to});
        }
      }
    }
    if (dist[static_cast<std::size_t>(dem.src)] == kInf) throw unroutable();

    std::vector<EdgeId> route;
    NodeIndex at = dem.src;
    while (at != dem.dst) {
      const Arc* next = nullptr;
      for (const Arc& arc : adjacency[static_cast<std::size_t>(at)]) {
        if (!allowed.count(arc.link) || dist[static_cast<std::size_t>(arc.to)] == kInf) continue;
        if (arc.length + dist[static_cast<std::size_t>(arc.to)] == dist[static_cast<std::size_t>(at)]) {
          next = &arc;
          break;
        }
      }
      route.push_back(next->link);
      fa.link_load[next->link] += dem.rate;
      at = next->to;
    }
    fa.routes.emplace(d, std::move(route));
  }
  return fa;
}

/// channels(L) = ceil(load(L) / channel_capacity).
inline CapacityPlan assign_capacities(const FlowAssignment& fa, Bandwidth channel_capacity) {
  if (!(channel_capacity > 0)) {
    throw Error(ErrorCode::kParamsInfeasible, "channel_capacity must be positive");
  }
  CapacityPlan plan;
  for (const auto& [link, load] : fa.link_load) plan.channels[link] = channels_for(load, channel_capacity);
  return plan;
}

}  // namespace mlsynth
