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

// Synthesis of the redundant multilayer graph from an instance: pick the
// overlay layers, describe each by a graph, connect the layers, and weight
// vertices and edges.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/mlg_model.hpp"

namespace mlsynth {

struct CandidateLsrSet {
  enum class Mode { kAllNodes, kEndpointsPlus };
  Mode mode = Mode::kAllNodes;
  std::vector<NodeIndex> extra;  // kEndpointsPlus only

  static CandidateLsrSet all_nodes() { return {}; }
  static CandidateLsrSet endpoints_plus(std::vector<NodeIndex> nodes) {
    return {Mode::kEndpointsPlus, std::move(nodes)};
  }
};

struct BuilderParams {
  static constexpr int kAllPaths = INT_MAX;

  int k_paths = 2;
  std::optional<int> max_logical_degree;
  CandidateLsrSet candidate_lsr;
};

// Simple transport path between two nodes.
struct TransportPath {
  std::vector<NodeIndex> nodes;
  std::vector<TransportEdgeIndex> edges;

  friend bool operator==(const TransportPath&, const TransportPath&) = default;
};

struct CandidateLink {
  NodeIndex a = -1;  // lower-ranked endpoint
  NodeIndex b = -1;
  TransportPath path;
  Cost cost_per_channel = 0;
  Bandwidth capacity_per_channel = 0;
};

namespace builder_detail {

// Shortest path from `from` to `to` by hops, lexicographically smallest in
// node rank among equals, avoiding blocked nodes and edges.
inline std::optional<TransportPath> smallest_shortest_path(const Topology& topo, NodeIndex from, NodeIndex to,
                                                           const std::vector<char>& blocked_node,
                                                           const std::set<TransportEdgeIndex>& blocked_edge) {
  std::vector<int> dist(topo.adjacency.size(), -1);
  std::queue<NodeIndex> frontier;
  dist[static_cast<std::size_t>(to)] = 0;
  frontier.push(to);
  while (!frontier.empty()) {
    const NodeIndex u = frontier.front();
    frontier.pop();
    for (const auto& arc : topo.adjacency[static_cast<std::size_t>(u)]) {
      const auto w = static_cast<std::size_t>(arc.to);
      if (dist[w] >= 0 || blocked_node[w] || blocked_edge.count(arc.edge)) continue;
      dist[w] = dist[static_cast<std::size_t>(u)] + 1;
      frontier.push(arc.to);
    }
  }
  if (dist[static_cast<std::size_t>(from)] < 0) return std::nullopt;
  TransportPath path;
  path.nodes.push_back(from);
  for (NodeIndex at = from; at != to;) {
    for (const auto& arc : topo.adjacency[static_cast<std::size_t>(at)]) {
      const int d = dist[static_cast<std::size_t>(arc.to)];
      if (d < 0 || d != dist[static_cast<std::size_t>(at)] - 1 || blocked_edge.count(arc.edge)) continue;
      path.nodes.push_back(arc.to);
      path.edges.push_back(arc.edge);
      at = arc.to;
      break;
    }
  }
  return path;
}

}  // namespace builder_detail

/// The `k` shortest simple paths from `from` to `to` by hop count, ties in
/// lexicographic order of the node-rank sequence (Yen's algorithm with
/// rank-ordered spur paths). `dist_to_target` only short-cuts unreachable
/// pairs.
inline std::vector<TransportPath> k_shortest_hop_paths(const Topology& topo, NodeIndex from, NodeIndex to, int k,
                                                       const std::vector<int>& dist_to_target) {
  std::vector<TransportPath> out;
  if (k <= 0 || from == to || dist_to_target[static_cast<std::size_t>(from)] < 0) return out;
  const auto key = [&](const TransportPath& p) {
    std::vector<int> ranks;
    for (const NodeIndex v : p.nodes) ranks.push_back(topo.rank[static_cast<std::size_t>(v)]);
    return std::pair(p.edges.size(), std::move(ranks));
  };
  std::vector<char> blocked_node(topo.adjacency.size(), 0);
  const auto first = builder_detail::smallest_shortest_path(topo, from, to, blocked_node, {});
  if (!first) return out;
  out.push_back(*first);

  std::map<std::pair<std::size_t, std::vector<int>>, TransportPath> candidates;
  while (out.size() < static_cast<std::size_t>(k)) {
    const TransportPath prev = out.back();
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      const NodeIndex spur = prev.nodes[i];
      std::set<TransportEdgeIndex> blocked_edge;
      for (const auto& p : out) {
        if (p.nodes.size() > i + 1 && std::equal(p.nodes.begin(), p.nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                                 prev.nodes.begin())) {
          blocked_edge.insert(p.edges[i]);
        }
      }
      std::fill(blocked_node.begin(), blocked_node.end(), 0);
      for (std::size_t j = 0; j < i; ++j) blocked_node[static_cast<std::size_t>(prev.nodes[j])] = 1;
      const auto tail = builder_detail::smallest_shortest_path(topo, spur, to, blocked_node, blocked_edge);
      if (!tail) continue;
      TransportPath path;
      path.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + static_cast<std::ptrdiff_t>(i));
      path.edges.assign(prev.edges.begin(), prev.edges.begin() + static_cast<std::ptrdiff_t>(i));
      path.nodes.insert(path.nodes.end(), tail->nodes.begin(), tail->nodes.end());
      path.edges.insert(path.edges.end(), tail->edges.begin(), tail->edges.end());
      auto rank_key = key(path);
      candidates.emplace(std::move(rank_key), std::move(path));
    }
    if (candidates.empty()) break;
    out.push_back(std::move(candidates.begin()->second));
    candidates.erase(candidates.begin());
  }
  return out;
}

inline std::vector<TransportPath> k_shortest_hop_paths(const Topology& topo, NodeIndex from, NodeIndex to, int k) {
  return k_shortest_hop_paths(topo, from, to, k, topo.hop_distances(to));
}

/// Candidate LSR nodes in index order. Demand endpoints are always included.
inline std::vector<NodeIndex> candidate_lsr_nodes(const Instance& inst, const BuilderParams& params) {
  std::vector<char> chosen(inst.nodes.size(), params.candidate_lsr.mode == CandidateLsrSet::Mode::kAllNodes);
  for (const NodeIndex v : params.candidate_lsr.extra) {
    if (v < 0 || v >= inst.node_count()) {
      throw Error(ErrorCode::kParamsInfeasible, "candidate LSR " + std::to_string(v) + " is not a node");
    }
    chosen[static_cast<std::size_t>(v)] = 1;
  }
  for (const auto& d : inst.demands) {
    chosen[static_cast<std::size_t>(d.src)] = 1;
    chosen[static_cast<std::size_t>(d.dst)] = 1;
  }
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < inst.node_count(); ++v) {
    if (chosen[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

/// Candidate logical links: for each unordered pair of candidate LSRs (in
/// node-rank order) its k shortest hop paths. Transport-adjacent pairs are
/// exempt from the degree cap so single-hop links always exist.
inline std::vector<CandidateLink> candidate_logical_links(const Instance& inst, const BuilderParams& params) {
  if (params.k_paths < 1) throw Error(ErrorCode::kParamsInfeasible, "k_paths must be at least 1");
  if (params.max_logical_degree && *params.max_logical_degree < 0) {
    throw Error(ErrorCode::kParamsInfeasible, "max_logical_degree must be non-negative");
  }
  const Topology topo(inst);
  std::vector<NodeIndex> lsrs = candidate_lsr_nodes(inst, params);
  std::sort(lsrs.begin(), lsrs.end(), [&](NodeIndex x, NodeIndex y) {
    return topo.rank[static_cast<std::size_t>(x)] < topo.rank[static_cast<std::size_t>(y)];
  });

  struct PairPaths {
    NodeIndex a, b;
    int hops;
    std::vector<TransportPath> paths;
  };
  std::vector<PairPaths> pairs;
  std::vector<std::vector<int>> dist(inst.nodes.size());
  for (const NodeIndex b : lsrs) dist[static_cast<std::size_t>(b)] = topo.hop_distances(b);
  for (std::size_t i = 0; i < lsrs.size(); ++i) {
    for (std::size_t j = i + 1; j < lsrs.size(); ++j) {
      const NodeIndex a = lsrs[i];
      const NodeIndex b = lsrs[j];
      const auto& to_b = dist[static_cast<std::size_t>(b)];
      pairs.push_back({a, b, to_b[static_cast<std::size_t>(a)], k_shortest_hop_paths(topo, a, b, params.k_paths, to_b)});
    }
  }

  std::vector<char> keep(pairs.size(), 1);
  if (params.max_logical_degree) {
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pairs[x].hops < pairs[y].hops; });
    std::vector<int> degree(inst.nodes.size(), 0);
    for (const std::size_t i : order) {
      const auto& p = pairs[i];
      const int add = static_cast<int>(p.paths.size());
      const bool adjacent = p.hops == 1;
      if (!adjacent && (degree[static_cast<std::size_t>(p.a)] + add > *params.max_logical_degree ||
                        degree[static_cast<std::size_t>(p.b)] + add > *params.max_logical_degree)) {
        keep[i] = 0;
        continue;
      }
      degree[static_cast<std::size_t>(p.a)] += add;
      degree[static_cast<std::size_t>(p.b)] += add;
    }
  }

  std::vector<CandidateLink> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!keep[i]) continue;
    for (auto& path : pairs[i].paths) {
      Cost cost = 0;
      for (const auto e : path.edges) cost += inst.cost.channel_cost[static_cast<std::size_t>(e)];
      out.push_back({pairs[i].a, pairs[i].b, std::move(path), cost, inst.cost.channel_capacity});
    }
  }
  return out;
}

/// Assembles the layered graph for a fixed LSR candidate set and logical-link
/// universe. Edge ids are dense: transport edges keep their instance index,
/// logical links follow in `links` order, then inter-layer and flow edges.
inline MultilayerGraph assemble_mlg(const Instance& inst, const std::vector<NodeIndex>& lsrs,
                                    const std::vector<CandidateLink>& links) {
  MultilayerGraph mlg;
  mlg.layers.push_back(LayerId::transport());
  mlg.layers.push_back(LayerId::mpls());
  for (std::size_t d = 0; d < inst.demands.size(); ++d) mlg.layers.push_back(LayerId::flow(d));

  const std::size_t flow_edge_count = inst.demands.size() * (links.size() + lsrs.size());
  mlg.vertices.reserve(inst.nodes.size() + lsrs.size() * (1 + inst.demands.size()));
  mlg.edges.reserve(inst.transport_edges.size() + links.size() + lsrs.size() + flow_edge_count);

  for (NodeIndex v = 0; v < inst.node_count(); ++v) mlg.vertices.push_back({LayerId::transport(), v});
  for (const NodeIndex v : lsrs) {
    mlg.vertices.push_back({LayerId::mpls(), v});
    mlg.vertex_weights[{LayerId::mpls(), v}] = inst.cost.lsr_cost[static_cast<std::size_t>(v)];
  }

  const auto next_id = [&mlg] { return static_cast<EdgeId>(mlg.edges.size()); };
  for (std::size_t e = 0; e < inst.transport_edges.size(); ++e) {
    const auto& te = inst.transport_edges[e];
    mlg.edges.push_back({next_id(), {LayerId::transport(), te.a}, {LayerId::transport(), te.b}, EdgeKind::kIntraLayer,
                         inst.cost.channel_cost[e], kUnboundedCapacity, {}, std::nullopt});
  }
  std::vector<EdgeId> link_ids;
  for (const auto& link : links) {
    std::vector<EdgeId> realization(link.path.edges.begin(), link.path.edges.end());
    link_ids.push_back(next_id());
    mlg.edges.push_back({next_id(), {LayerId::mpls(), link.a}, {LayerId::mpls(), link.b}, EdgeKind::kIntraLayer,
                         link.cost_per_channel, link.capacity_per_channel, std::move(realization), std::nullopt});
  }
  for (const NodeIndex v : lsrs) {
    mlg.edges.push_back({next_id(), {LayerId::transport(), v}, {LayerId::mpls(), v}, EdgeKind::kInterLayer, 0,
                         kUnboundedCapacity, {}, std::nullopt});
  }
  for (std::size_t d = 0; d < inst.demands.size(); ++d) {
    const LayerId layer = LayerId::flow(d);
    for (const NodeIndex v : lsrs) mlg.vertices.push_back({layer, v});
    for (std::size_t i = 0; i < links.size(); ++i) {
      mlg.edges.push_back({next_id(), {layer, links[i].a}, {layer, links[i].b}, EdgeKind::kIntraLayer,
                           links[i].cost_per_channel, kUnboundedCapacity, {}, link_ids[i]});
    }
    for (const NodeIndex v : lsrs) {
      mlg.edges.push_back({next_id(), {LayerId::mpls(), v}, {layer, v}, EdgeKind::kInterLayer, 0, kUnboundedCapacity,
                           {}, std::nullopt});
    }
  }
  return mlg;
}

/// The initial redundant multilayer graph: every candidate LSR and every
/// candidate logical link, with one flow layer per demand.
inline MultilayerGraph build_redundant_mlg(const Instance& inst, const BuilderParams& params) {
  return assemble_mlg(inst, candidate_lsr_nodes(inst, params), candidate_logical_links(inst, params));
}

/// Overlay with an LSR on every node and one single-hop logical link per
/// transport edge; the graph the full-LSR baseline routes on.
inline MultilayerGraph build_full_lsr_mlg(const Instance& inst) {
  std::vector<NodeIndex> all(inst.nodes.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<NodeIndex>(v);
  const auto rank = node_ranks(inst);
  std::vector<CandidateLink> links;
  for (std::size_t e = 0; e < inst.transport_edges.size(); ++e) {
    auto [a, b] = std::pair{inst.transport_edges[e].a, inst.transport_edges[e].b};
    if (rank[static_cast<std::size_t>(b)] < rank[static_cast<std::size_t>(a)]) std::swap(a, b);
    links.push_back({a, b, {{a, b}, {static_cast<TransportEdgeIndex>(e)}}, inst.cost.channel_cost[e],
                     inst.cost.channel_capacity});
  }
  return assemble_mlg(inst, all, links);
}

}  // namespace mlsynth
