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

// Problem instances: transport topology, traffic demands and the cost model,
// plus the seeded generator behind the comparison suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mlsynth/error.hpp"
#include "mlsynth/random.hpp"

namespace mlsynth {

using NodeIndex = std::int32_t;
using TransportEdgeIndex = std::int32_t;
using Cost = std::int64_t;
using Bandwidth = double;

struct TransportEdge {
  std::string id;
  NodeIndex a = -1;
  NodeIndex b = -1;

  friend bool operator==(const TransportEdge&, const TransportEdge&) = default;
};

struct Demand {
  NodeIndex src = -1;
  NodeIndex dst = -1;
  Bandwidth rate = 0;

  friend bool operator==(const Demand&, const Demand&) = default;
};

// lsr_cost is indexed by node, channel_cost by transport edge.
struct CostModel {
  std::vector<Cost> lsr_cost;
  std::vector<Cost> channel_cost;
  Bandwidth channel_capacity = 1;

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct InstanceMeta {
  std::int64_t node_count = 0;
  std::string variant;
  std::uint64_t seed = 0;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

struct Instance {
  std::vector<std::string> nodes;
  std::vector<TransportEdge> transport_edges;
  std::vector<Demand> demands;
  CostModel cost;
  InstanceMeta meta;

  NodeIndex node_count() const { return static_cast<NodeIndex>(nodes.size()); }

  NodeIndex find_node(const std::string& id) const {
    const auto it = std::find(nodes.begin(), nodes.end(), id);
    return it == nodes.end() ? -1 : static_cast<NodeIndex>(it - nodes.begin());
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Rank of each node in lexicographic order of node ids. All tie-breaking
/// "by node-id sequence" compares these ranks.
inline std::vector<int> node_ranks(const Instance& inst) {
  std::vector<NodeIndex> order(inst.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeIndex x, NodeIndex y) {
    return inst.nodes[x] < inst.nodes[y];
  });
  std::vector<int> rank(inst.nodes.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  return rank;
}

/// Transport adjacency with neighbours sorted by node rank.
struct Topology {
  struct Arc {
    NodeIndex to;
    TransportEdgeIndex edge;
  };
  std::vector<std::vector<Arc>> adjacency;
  std::vector<int> rank;

  explicit Topology(const Instance& inst)
      : adjacency(inst.nodes.size()), rank(node_ranks(inst)) {
    for (std::size_t e = 0; e < inst.transport_edges.size(); ++e) {
      const auto& edge = inst.transport_edges[e];
      const auto idx = static_cast<TransportEdgeIndex>(e);
      adjacency[edge.a].push_back({edge.b, idx});
      adjacency[edge.b].push_back({edge.a, idx});
    }
    for (auto& arcs : adjacency) {
      std::sort(arcs.begin(), arcs.end(), [&](const Arc& x, const Arc& y) {
        return rank[x.to] != rank[y.to] ? rank[x.to] < rank[y.to] : x.edge < y.edge;
      });
    }
  }

  // Hop distances from `source`; -1 for unreachable nodes.
  std::vector<int> hop_distances(NodeIndex source) const {
    std::vector<int> dist(adjacency.size(), -1);
    std::queue<NodeIndex> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      const NodeIndex u = frontier.front();
      frontier.pop();
      for (const Arc& arc : adjacency[u]) {
        if (dist[arc.to] < 0) {
          dist[arc.to] = dist[u] + 1;
          frontier.push(arc.to);
        }
      }
    }
    return dist;
  }
};

/// Lists every violated Instance invariant as "CODE: detail". Empty iff valid.
inline std::vector<std::string> instance_violations(const Instance& inst) {
  std::vector<std::string> out;
  const auto n = static_cast<NodeIndex>(inst.nodes.size());
  const auto valid_node = [n](NodeIndex v) { return v >= 0 && v < n; };

  std::set<std::string> seen_nodes;
  for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
    if (inst.nodes[i].empty()) out.push_back("EMPTY_NODE_ID: nodes[" + std::to_string(i) + "]");
    if (!seen_nodes.insert(inst.nodes[i]).second) {
      out.push_back("DUPLICATE_NODE: nodes[" + std::to_string(i) + "] '" + inst.nodes[i] + "'");
    }
  }
  if (inst.meta.node_count != static_cast<std::int64_t>(inst.nodes.size())) {
    out.push_back("NODE_COUNT_MISMATCH: meta.node_count=" + std::to_string(inst.meta.node_count) +
                  " but " + std::to_string(inst.nodes.size()) + " nodes");
  }

  std::set<std::string> seen_edge_ids;
  std::set<std::pair<NodeIndex, NodeIndex>> seen_pairs;
  bool endpoints_ok = true;
  for (std::size_t e = 0; e < inst.transport_edges.size(); ++e) {
    const auto& edge = inst.transport_edges[e];
    const std::string where = "transport_edges[" + std::to_string(e) + "]";
    if (!seen_edge_ids.insert(edge.id).second) out.push_back("DUPLICATE_EDGE_ID: " + where + " '" + edge.id + "'");
    if (!valid_node(edge.a) || !valid_node(edge.b)) {
      out.push_back("UNKNOWN_NODE: " + where + " endpoint");
      endpoints_ok = false;
      continue;
    }
    if (edge.a == edge.b) out.push_back("SELF_LOOP: " + where);
    if (!seen_pairs.insert(std::minmax(edge.a, edge.b)).second) out.push_back("PARALLEL_EDGE: " + where);
  }

  for (std::size_t d = 0; d < inst.demands.size(); ++d) {
    const auto& dem = inst.demands[d];
    const std::string where = "demands[" + std::to_string(d) + "]";
    if (!valid_node(dem.src) || !valid_node(dem.dst)) {
      out.push_back("UNKNOWN_NODE: " + where + " endpoint");
      continue;
    }
    if (dem.src == dem.dst) out.push_back("DEMAND_SELF_LOOP: " + where + " has src == dst");
    if (!(dem.rate > 0) || !std::isfinite(dem.rate)) out.push_back("NONPOSITIVE_RATE: " + where);
  }

  if (inst.cost.lsr_cost.size() != inst.nodes.size()) {
    out.push_back("MISSING_COST: lsr_cost must cover every node");
  }
  if (inst.cost.channel_cost.size() != inst.transport_edges.size()) {
    out.push_back("MISSING_COST: channel_cost must cover every transport edge");
  }
  for (std::size_t i = 0; i < inst.cost.lsr_cost.size(); ++i) {
    if (inst.cost.lsr_cost[i] < 0) out.push_back("NEGATIVE_COST: lsr_cost[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < inst.cost.channel_cost.size(); ++i) {
    if (inst.cost.channel_cost[i] < 0) out.push_back("NEGATIVE_COST: channel_cost[" + std::to_string(i) + "]");
  }
  if (!(inst.cost.channel_capacity > 0) || !std::isfinite(inst.cost.channel_capacity)) {
    out.push_back("NONPOSITIVE_CAPACITY: channel_capacity");
  }

  if (endpoints_ok && n > 0) {
    const auto dist = Topology(inst).hop_distances(0);
    if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; })) {
      out.push_back("DISCONNECTED: transport graph is not connected");
    }
  }
  return out;
}

inline void validate_instance(const Instance& inst) {
  auto violations = instance_violations(inst);
  if (!violations.empty()) {
    const std::string first = violations.front();
    throw Error(ErrorCode::kValidationError, first, std::move(violations));
  }
}

// ---------------------------------------------------------------------------
// Generation

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct VariantParams {
  std::string tag;
  double edge_density = 1.0;  // fraction of the n(n-1)/2 possible edges
  std::int64_t demand_count = 0;
  IntRange rate_range{1, 1};
  IntRange lsr_cost_range{1, 1};
  IntRange channel_cost_range{1, 1};
  Bandwidth channel_capacity = 10;
};

inline constexpr int kVariantCount = 8;

/// The eight shipped presets: variant 1..8 enumerates
/// {sparse, dense} x {cheap LSR, expensive LSR} x {thin, thick demands}.
/// Every preset draws 1.2 demands per node, so most nodes terminate traffic
/// and the LSR savings stay modest; rates stay below one channel.
inline VariantParams variant_preset(int variant, int node_count) {
  if (variant < 1 || variant > kVariantCount) {
    throw Error(ErrorCode::kParamsInfeasible, "variant must be in 1.." + std::to_string(kVariantCount));
  }
  const int bits = variant - 1;
  const bool dense = (bits & 4) != 0;
  const bool expensive_lsr = (bits & 2) != 0;
  const bool thick = (bits & 1) != 0;

  VariantParams p;
  p.tag = std::to_string(variant);
  p.channel_capacity = 10;
  // Small graphs need at least a spanning tree: n - 1 = (2 / n) * n(n-1)/2.
  p.edge_density = std::min(1.0, std::max(dense ? 0.16 : 0.12, 2.0 / node_count));
  p.demand_count = static_cast<std::int64_t>(std::llround(1.2 * node_count));
  p.rate_range = thick ? IntRange{2, 5} : IntRange{1, 3};
  p.channel_cost_range = IntRange{8, 12};
  p.lsr_cost_range = expensive_lsr ? IntRange{40, 60} : IntRange{15, 25};
  return p;
}

/// Seeded random instance: random spanning tree plus uniformly chosen extra
/// edges up to the requested density, demands over uniform distinct pairs.
inline Instance generate_instance(int node_count, const VariantParams& params, std::uint64_t seed) {
  if (node_count < 3) {
    throw Error(ErrorCode::kParamsInfeasible, "node_count must be at least 3");
  }
  if (!(params.edge_density > 0.0) || params.edge_density > 1.0) {
    throw Error(ErrorCode::kParamsInfeasible, "edge_density must lie in (0, 1]");
  }
  const std::int64_t max_edges = static_cast<std::int64_t>(node_count) * (node_count - 1) / 2;
  const auto edge_target = static_cast<std::int64_t>(std::llround(params.edge_density * static_cast<double>(max_edges)));
  if (edge_target < node_count - 1) {
    throw Error(ErrorCode::kParamsInfeasible,
                "edge_density " + std::to_string(params.edge_density) + " is below the spanning-tree threshold");
  }
  const auto bad_range = [](const IntRange& r, std::int64_t min_lo) { return r.lo < min_lo || r.hi < r.lo; };
  if (params.demand_count < 0 || bad_range(params.rate_range, 1) || bad_range(params.lsr_cost_range, 0) ||
      bad_range(params.channel_cost_range, 0) || !(params.channel_capacity > 0)) {
    throw Error(ErrorCode::kParamsInfeasible, "demand/rate/cost ranges or capacity out of domain");
  }

  Rng rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(node_count)), hash_string(params.tag)));

  Instance inst;
  const int width = static_cast<int>(std::to_string(node_count - 1).size());
  for (int i = 0; i < node_count; ++i) {
    std::string digits = std::to_string(i);
    inst.nodes.push_back("n" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits);
  }

  std::vector<NodeIndex> order(static_cast<std::size_t>(node_count));
  std::iota(order.begin(), order.end(), 0);
  shuffle(std::span(order), rng);
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  std::set<std::pair<NodeIndex, NodeIndex>> used;
  for (int i = 1; i < node_count; ++i) {
    const NodeIndex parent = order[static_cast<std::size_t>(uniform_int(rng, 0, i - 1))];
    const auto key = std::minmax(parent, order[static_cast<std::size_t>(i)]);
    pairs.push_back(key);
    used.insert(key);
  }
  std::vector<std::pair<NodeIndex, NodeIndex>> extra;
  for (NodeIndex a = 0; a < node_count; ++a) {
    for (NodeIndex b = a + 1; b < node_count; ++b) {
      if (!used.count({a, b})) extra.emplace_back(a, b);
    }
  }
  shuffle(std::span(extra), rng);
  extra.resize(static_cast<std::size_t>(edge_target - (node_count - 1)));
  std::sort(extra.begin(), extra.end());
  pairs.insert(pairs.end(), extra.begin(), extra.end());

  const int edge_width = static_cast<int>(std::to_string(pairs.size() - 1).size());
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    std::string digits = std::to_string(e);
    inst.transport_edges.push_back(
        {"e" + std::string(static_cast<std::size_t>(edge_width) - digits.size(), '0') + digits, pairs[e].first,
         pairs[e].second});
  }

  for (std::int64_t d = 0; d < params.demand_count; ++d) {
    const auto src = static_cast<NodeIndex>(uniform_int(rng, 0, node_count - 1));
    auto dst = static_cast<NodeIndex>(uniform_int(rng, 0, node_count - 2));
    if (dst >= src) ++dst;
    const auto rate = static_cast<Bandwidth>(uniform_int(rng, params.rate_range.lo, params.rate_range.hi));
    inst.demands.push_back({src, dst, rate});
  }

  for (int i = 0; i < node_count; ++i) {
    inst.cost.lsr_cost.push_back(uniform_int(rng, params.lsr_cost_range.lo, params.lsr_cost_range.hi));
  }
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    inst.cost.channel_cost.push_back(uniform_int(rng, params.channel_cost_range.lo, params.channel_cost_range.hi));
  }
  inst.cost.channel_capacity = params.channel_capacity;
  inst.meta = {node_count, params.tag, seed};
  return inst;
}

}  // namespace mlsynth
