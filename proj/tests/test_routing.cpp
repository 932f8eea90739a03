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


#include <gtest/gtest.h>

#include "mlsynth/builder.hpp"
#include "mlsynth/error.hpp"
#include "mlsynth/routing.hpp"
#include "test_support.hpp"

namespace mlsynth {
namespace {

// Logical link id between two nodes in a graph with one candidate per pair.
EdgeId link_between(const MultilayerGraph& mlg, NodeIndex a, NodeIndex b) {
  for (const auto& e : mlg.edges) {
    if (mlg.is_logical_link(e) && std::minmax(e.u.node, e.v.node) == std::minmax(a, b)) return e.id;
  }
  throw std::runtime_error("no logical link");
}

TEST(RouteFlows, PathOverlayAggregatesOnSharedHop) {
  const Instance inst = testing::aggregation_path();
  const auto mlg = build_full_lsr_mlg(inst);
  const EdgeId ab = link_between(mlg, 0, 1);
  const EdgeId bc = link_between(mlg, 1, 2);
  const auto fa = route_flows(inst, mlg, {{0, 1, 2}, {ab, bc}});
  EXPECT_EQ(fa.routes, (std::map<std::size_t, std::vector<EdgeId>>{{0, {ab, bc}}, {1, {bc}}}));
  EXPECT_EQ(fa.link_load, (std::map<EdgeId, Bandwidth>{{ab, 3}, {bc, 6}}));
}

TEST(RouteFlows, NoDemandsIsEmpty) {
  Instance inst = testing::triangle();
  inst.demands.clear();
  const auto mlg = build_full_lsr_mlg(inst);
  const auto fa = route_flows(inst, mlg, {{0, 1, 2}, {}});
  EXPECT_TRUE(fa.routes.empty());
  EXPECT_TRUE(fa.link_load.empty());
}

TEST(RouteFlows, DisconnectedEndpointIsUnroutable) {
  const Instance inst = testing::aggregation_path();
  const auto mlg = build_full_lsr_mlg(inst);
  try {
    route_flows(inst, mlg, {{0, 1, 2}, {link_between(mlg, 0, 1)}});
    FAIL() << "expected UNROUTABLE";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnroutable);
    EXPECT_EQ(e.details().front(), "UNROUTABLE(0)");
  }
}

TEST(RouteFlows, RejectsLinkOutsideSelection) {
  const Instance inst = testing::aggregation_path();
  const auto mlg = build_full_lsr_mlg(inst);
  EXPECT_THROW(route_flows(inst, mlg, {{0, 2}, {link_between(mlg, 0, 1)}}), Error);
  try {
    route_flows(inst, mlg, {{0, 1, 2}, {12345}});
    FAIL() << "expected UNKNOWN_LOGICAL_LINK";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownLogicalLink);
  }
}

TEST(RouteFlows, PrefersFewerTransportHops) {
  // Triangle with every candidate: A->C goes over the direct A-C link even
  // though A-B-C also exists as a two-link route.
  const Instance inst = testing::triangle();
  const auto mlg = build_redundant_mlg(inst, testing::with_k_paths(1));
  std::vector<EdgeId> all;
  for (const auto& e : mlg.edges) {
    if (mlg.is_logical_link(e)) all.push_back(e.id);
  }
  const auto fa = route_flows(inst, mlg, {{0, 1, 2}, all});
  EXPECT_EQ(fa.routes.at(0), (std::vector<EdgeId>{link_between(mlg, 0, 2)}));
  EXPECT_EQ(fa.link_load.size(), all.size());
  EXPECT_EQ(fa.link_load.at(link_between(mlg, 0, 1)), 0);
}

TEST(RouteFlows, EveryRouteIsASimpleConnectedPath) {
  const Instance inst = generate_instance(30, variant_preset(4, 30), 8);
  const auto mlg = build_full_lsr_mlg(inst);
  std::vector<NodeIndex> all_nodes;
  for (NodeIndex v = 0; v < inst.node_count(); ++v) all_nodes.push_back(v);
  std::vector<EdgeId> links;
  for (const auto& e : mlg.edges) {
    if (mlg.is_logical_link(e)) links.push_back(e.id);
  }
  const auto fa = route_flows(inst, mlg, {all_nodes, links});
  ASSERT_EQ(fa.routes.size(), inst.demands.size());
  std::map<EdgeId, Bandwidth> recomputed;
  for (const auto& [d, route] : fa.routes) {
    NodeIndex at = inst.demands[d].src;
    std::set<NodeIndex> visited{at};
    for (const EdgeId id : route) {
      const MlgEdge* e = mlg.find_edge(id);
      ASSERT_TRUE(e->u.node == at || e->v.node == at);
      at = e->u.node == at ? e->v.node : e->u.node;
      EXPECT_TRUE(visited.insert(at).second);
      recomputed[id] += inst.demands[d].rate;
    }
    EXPECT_EQ(at, inst.demands[d].dst);
  }
  for (const auto& [id, load] : fa.link_load) {
    EXPECT_NEAR(load, recomputed.count(id) ? recomputed.at(id) : 0.0, 1e-9);
  }
}

TEST(AssignCapacities, CeilingRule) {
  FlowAssignment fa;
  fa.link_load = {{1, 6}, {2, 25}, {3, 0}, {4, 10}, {5, 10.0000000001}};
  const auto plan = assign_capacities(fa, 10);
  EXPECT_EQ(plan.channels, (std::map<EdgeId, std::int64_t>{{1, 1}, {2, 3}, {3, 0}, {4, 1}, {5, 1}}));
  EXPECT_THROW(assign_capacities(fa, 0), Error);
}

TEST(AssignCapacities, Monotone) {
  for (int cap = 1; cap <= 12; ++cap) {
    std::int64_t previous = 0;
    for (int tenths = 0; tenths <= 400; ++tenths) {
      const std::int64_t c = channels_for(tenths / 10.0, cap);
      EXPECT_GE(c, previous);
      EXPECT_EQ(c == 0, tenths == 0);
      previous = c;
    }
  }
}

}  // namespace
}  // namespace mlsynth
