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

// Multilayer graph MLG = (layers, vertices, edges).
//
// Layers are ordered Transport < Mpls < Flow(0) < Flow(1) < ... . A vertex is
// a (layer, node) pair mirroring a transport node. Intra-layer edges live
// inside one layer; inter-layer edges tie the copies of one node in adjacent
// layers together and carry zero weight and unbounded capacity.
//
// Costs sit on Mpls-layer vertices (LSR equipment) and on transport edges
// (price of one channel). A logical link is an Mpls intra-layer edge whose
// `realization` is the transport path carrying its channels; its weight is
// the per-channel price of that path. Flow-layer edges `mirror` the logical
// links a demand may use.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/solution.hpp"

namespace mlsynth {

enum class LayerKind { kTransport = 0, kMpls = 1, kFlow = 2 };

struct LayerId {
  LayerKind kind = LayerKind::kTransport;
  std::optional<std::size_t> flow_index;  // set iff kind == kFlow

  static LayerId transport() { return {LayerKind::kTransport, std::nullopt}; }
  static LayerId mpls() { return {LayerKind::kMpls, std::nullopt}; }
  static LayerId flow(std::size_t demand) { return {LayerKind::kFlow, demand}; }

  friend auto operator<=>(const LayerId&, const LayerId&) = default;
  friend bool operator==(const LayerId&, const LayerId&) = default;
};

inline std::string to_string(const LayerId& layer) {
  switch (layer.kind) {
    case LayerKind::kTransport: return "transport";
    case LayerKind::kMpls: return "mpls";
    case LayerKind::kFlow:
      return "flow[" + (layer.flow_index ? std::to_string(*layer.flow_index) : std::string("?")) + "]";
  }
  return "?";
}

struct LayeredVertex {
  LayerId layer;
  NodeIndex node = -1;

  friend auto operator<=>(const LayeredVertex&, const LayeredVertex&) = default;
  friend bool operator==(const LayeredVertex&, const LayeredVertex&) = default;
};

enum class EdgeKind { kIntraLayer, kInterLayer };

inline constexpr Bandwidth kUnboundedCapacity = std::numeric_limits<Bandwidth>::infinity();

struct MlgEdge {
  EdgeId id = -1;
  LayeredVertex u;
  LayeredVertex v;
  EdgeKind kind = EdgeKind::kIntraLayer;
  Cost weight = 0;
  Bandwidth capacity = 0;
  std::vector<EdgeId> realization;  // Mpls intra-layer edges only
  std::optional<EdgeId> mirrors;    // Flow intra-layer edges: the logical link
};

struct MultilayerGraph {
  std::vector<LayerId> layers;
  std::vector<LayeredVertex> vertices;
  std::vector<MlgEdge> edges;
  std::map<LayeredVertex, Cost> vertex_weights;

  const MlgEdge* find_edge(EdgeId id) const {
    if (id >= 0 && static_cast<std::size_t>(id) < edges.size() && edges[static_cast<std::size_t>(id)].id == id) {
      return &edges[static_cast<std::size_t>(id)];
    }
    const auto it = std::find_if(edges.begin(), edges.end(), [id](const MlgEdge& e) { return e.id == id; });
    return it == edges.end() ? nullptr : &*it;
  }

  bool has_layer(const LayerId& layer) const {
    return std::find(layers.begin(), layers.end(), layer) != layers.end();
  }

  Cost vertex_weight(const LayeredVertex& v) const {
    const auto it = vertex_weights.find(v);
    return it == vertex_weights.end() ? 0 : it->second;
  }

  bool is_logical_link(const MlgEdge& e) const {
    return e.kind == EdgeKind::kIntraLayer && e.u.layer.kind == LayerKind::kMpls &&
           e.v.layer.kind == LayerKind::kMpls;
  }
};

struct Violation {
  std::string code;
  std::string subject;  // "edge 12", "vertex mpls/3", "layers"
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

namespace mlg_detail {

inline std::string vertex_name(const LayeredVertex& v) {
  return "vertex " + to_string(v.layer) + "/" + std::to_string(v.node);
}

inline bool adjacent_layers(const LayerId& x, const LayerId& y) {
  const auto pair = std::minmax(x.kind, y.kind);
  return (pair.first == LayerKind::kTransport && pair.second == LayerKind::kMpls) ||
         (pair.first == LayerKind::kMpls && pair.second == LayerKind::kFlow);
}

// True iff `path` (transport MLG edge ids) is a simple walk from `from` to `to`.
inline bool is_simple_transport_path(const MultilayerGraph& mlg, const std::vector<EdgeId>& path,
                                     NodeIndex from, NodeIndex to) {
  std::set<NodeIndex> visited{from};
  NodeIndex at = from;
  for (const EdgeId id : path) {
    const MlgEdge* e = mlg.find_edge(id);
    if (e == nullptr || e->kind != EdgeKind::kIntraLayer || e->u.layer.kind != LayerKind::kTransport ||
        e->v.layer.kind != LayerKind::kTransport) {
      return false;
    }
    NodeIndex next;
    if (e->u.node == at) {
      next = e->v.node;
    } else if (e->v.node == at) {
      next = e->u.node;
    } else {
      return false;
    }
    if (!visited.insert(next).second) return false;
    at = next;
  }
  return at == to;
}

}  // namespace mlg_detail

/// Every structural invariant violation; empty iff the graph is well formed.
inline ValidationReport validate(const MultilayerGraph& mlg) {
  using mlg_detail::vertex_name;
  ValidationReport report;
  const auto add = [&report](std::string code, std::string subject, std::string detail) {
    report.push_back({std::move(code), std::move(subject), std::move(detail)});
  };

  int transport_layers = 0;
  int mpls_layers = 0;
  std::set<std::size_t> flow_indices;
  for (std::size_t i = 0; i < mlg.layers.size(); ++i) {
    const LayerId& layer = mlg.layers[i];
    if (layer.kind == LayerKind::kTransport) ++transport_layers;
    if (layer.kind == LayerKind::kMpls) ++mpls_layers;
    if ((layer.kind == LayerKind::kFlow) != layer.flow_index.has_value()) {
      add("FLOW_INDEX", "layer " + to_string(layer), "flow_index must be present exactly on flow layers");
    }
    if (layer.kind == LayerKind::kFlow && layer.flow_index && !flow_indices.insert(*layer.flow_index).second) {
      add("DUPLICATE_FLOW_INDEX", "layer " + to_string(layer), "two flow layers share one demand");
    }
    if (i > 0 && !(mlg.layers[i - 1] < layer)) {
      add("LAYER_ORDER", "layer " + to_string(layer), "layers must be ordered transport < mpls < flows");
    }
  }
  if (transport_layers != 1) add("LAYER_COUNT", "layers", "expected exactly one transport layer");
  if (mpls_layers != 1) add("LAYER_COUNT", "layers", "expected exactly one mpls layer");

  std::set<LayeredVertex> vertex_set;
  for (const auto& v : mlg.vertices) {
    if (!vertex_set.insert(v).second) add("DUPLICATE_VERTEX", vertex_name(v), "(layer, node) pair repeated");
    if (!mlg.has_layer(v.layer)) add("UNKNOWN_LAYER", vertex_name(v), "vertex layer not in layer list");
  }
  for (const auto& v : mlg.vertices) {
    if (v.layer.kind == LayerKind::kMpls && !vertex_set.count({LayerId::transport(), v.node})) {
      add("DANGLING_MIRROR", vertex_name(v), "mpls vertex has no transport node");
    }
    if (v.layer.kind == LayerKind::kFlow && !vertex_set.count({LayerId::mpls(), v.node})) {
      add("DANGLING_MIRROR", vertex_name(v), "flow vertex has no mpls vertex");
    }
  }
  for (const auto& [v, w] : mlg.vertex_weights) {
    if (!vertex_set.count(v)) add("UNKNOWN_VERTEX", vertex_name(v), "weight on a missing vertex");
    if (w < 0) add("NEGATIVE_WEIGHT", vertex_name(v), "vertex weight below zero");
    if (w != 0 && v.layer.kind != LayerKind::kMpls) {
      add("UNEXPECTED_VERTEX_WEIGHT", vertex_name(v), "only mpls vertices carry equipment cost");
    }
  }

  std::set<EdgeId> edge_ids;
  std::set<std::pair<LayeredVertex, LayeredVertex>> plain_pairs;
  std::set<std::tuple<NodeIndex, NodeIndex, std::vector<EdgeId>>> logical_keys;
  std::set<std::tuple<LayerId, NodeIndex, NodeIndex, EdgeId>> flow_keys;
  for (const auto& e : mlg.edges) {
    const std::string subject = "edge " + std::to_string(e.id);
    if (!edge_ids.insert(e.id).second) add("DUPLICATE_EDGE_ID", subject, "edge id repeated");
    if (!vertex_set.count(e.u) || !vertex_set.count(e.v)) {
      add("UNKNOWN_VERTEX", subject, "endpoint not in vertex set");
      continue;
    }
    if (e.weight < 0) add("NEGATIVE_WEIGHT", subject, "edge weight below zero");
    if (!(e.capacity >= 0)) add("NEGATIVE_CAPACITY", subject, "edge capacity below zero");

    const bool logical = mlg.is_logical_link(e);
    if (!logical && !e.realization.empty()) {
      add("UNEXPECTED_REALIZATION", subject, "only mpls intra-layer edges have realizations");
    }

    if (e.kind == EdgeKind::kInterLayer) {
      if (!mlg_detail::adjacent_layers(e.u.layer, e.v.layer)) {
        add("NON_ADJACENT_LAYERS", subject, "inter-layer edge must join transport-mpls or mpls-flow");
      }
      if (e.u.node != e.v.node) add("MIRROR_MISMATCH", subject, "inter-layer edge joins different nodes");
      continue;
    }

    if (e.u.layer != e.v.layer) {
      add("LAYER_MISMATCH", subject, "intra-layer edge spans two layers");
      continue;
    }
    if (e.u.node == e.v.node) {
      add("SELF_LOOP", subject, "intra-layer self loop");
      continue;
    }
    const auto [lo, hi] = std::minmax(e.u.node, e.v.node);
    if (logical) {
      if (e.realization.empty()) {
        add("EMPTY_REALIZATION", subject, "logical link has no transport path");
      } else if (!mlg_detail::is_simple_transport_path(mlg, e.realization, e.u.node, e.v.node)) {
        add("BROKEN_REALIZATION", subject, "realization is not a simple transport path between the endpoints");
      } else {
        std::vector<EdgeId> canonical = e.realization;
        if (e.u.node != lo) std::reverse(canonical.begin(), canonical.end());
        if (!logical_keys.insert({lo, hi, canonical}).second) {
          add("PARALLEL_EDGE", subject, "two logical links share endpoints and realization");
        }
      }
    } else if (e.u.layer.kind == LayerKind::kFlow && e.mirrors) {
      const MlgEdge* link = mlg.find_edge(*e.mirrors);
      if (link == nullptr || !mlg.is_logical_link(*link) || std::minmax(link->u.node, link->v.node) != std::minmax(lo, hi)) {
        add("BAD_MIRROR", subject, "flow edge must mirror a logical link with the same endpoints");
      } else if (!flow_keys.insert({e.u.layer, lo, hi, *e.mirrors}).second) {
        add("PARALLEL_EDGE", subject, "flow layer mirrors one logical link twice");
      }
    } else {
      const LayeredVertex a{e.u.layer, lo};
      const LayeredVertex b{e.u.layer, hi};
      if (!plain_pairs.insert({a, b}).second) add("PARALLEL_EDGE", subject, "parallel intra-layer edge");
    }
  }
  return report;
}

/// Vertices and intra-layer edges of one layer.
struct LayerGraph {
  LayerId layer;
  std::vector<LayeredVertex> vertices;
  std::vector<MlgEdge> edges;
};

inline LayerGraph layer_subgraph(const MultilayerGraph& mlg, const LayerId& layer) {
  if (!mlg.has_layer(layer)) {
    throw Error(ErrorCode::kLayerNotFound, "layer " + to_string(layer) + " is not part of the graph");
  }
  LayerGraph out{layer, {}, {}};
  for (const auto& v : mlg.vertices) {
    if (v.layer == layer) out.vertices.push_back(v);
  }
  for (const auto& e : mlg.edges) {
    if (e.kind == EdgeKind::kIntraLayer && e.u.layer == layer && e.v.layer == layer) out.edges.push_back(e);
  }
  return out;
}

/// Bandwidth provisioned on each transport edge: every chosen logical link
/// occupies channels x channel-capacity on each edge of its realization.
inline std::map<EdgeId, Bandwidth> physical_load(const MultilayerGraph& mlg, const Solution& sol) {
  std::map<EdgeId, Bandwidth> load;
  for (const auto& e : mlg.edges) {
    if (e.kind == EdgeKind::kIntraLayer && e.u.layer.kind == LayerKind::kTransport) load[e.id] = 0;
  }
  for (const auto& link : sol.logical_links) {
    const MlgEdge* e = mlg.find_edge(link.id);
    if (e == nullptr || !mlg.is_logical_link(*e)) {
      throw Error(ErrorCode::kUnknownLogicalLink, "logical link " + std::to_string(link.id) + " not in graph");
    }
    for (const EdgeId t : e->realization) {
      load[t] += static_cast<Bandwidth>(link.channels) * e->capacity;
    }
  }
  return load;
}

}  // namespace mlsynth
