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

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/mlg_model.hpp"
#include "mlsynth/routing.hpp"
#include "mlsynth/solution.hpp"

namespace mlsynth {

/// First violated feasibility constraint of `sol` against `inst`, or nullopt.
/// Checks LSR coverage of demand endpoints, realizations, route continuity,
/// link loads and channel coverage.
inline std::optional<std::string> check_feasibility(const Instance& inst, const Solution& sol) {
  const auto n = inst.node_count();
  std::vector<char> is_lsr(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < sol.lsr_nodes.size(); ++i) {
    const NodeIndex v = sol.lsr_nodes[i];
    if (v < 0 || v >= n) return "UNKNOWN_NODE: lsr_nodes contains " + std::to_string(v);
    if (i > 0 && sol.lsr_nodes[i - 1] >= v) return "LSR_ORDER: lsr_nodes must be sorted and unique";
    is_lsr[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t d = 0; d < inst.demands.size(); ++d) {
    const auto& dem = inst.demands[d];
    if (!is_lsr[static_cast<std::size_t>(dem.src)] || !is_lsr[static_cast<std::size_t>(dem.dst)]) {
      return "ENDPOINT_NOT_LSR: demand " + std::to_string(d);
    }
  }

  std::map<EdgeId, const LogicalLink*> links;
  for (const auto& link : sol.logical_links) {
    const std::string where = "logical link " + std::to_string(link.id);
    if (!links.emplace(link.id, &link).second) return "DUPLICATE_LINK: " + where;
    if (link.a < 0 || link.a >= n || link.b < 0 || link.b >= n || link.a == link.b) return "BAD_ENDPOINTS: " + where;
    if (!is_lsr[static_cast<std::size_t>(link.a)] || !is_lsr[static_cast<std::size_t>(link.b)]) {
      return "LINK_WITHOUT_LSR: " + where;
    }
    if (link.realization.empty()) return "EMPTY_REALIZATION: " + where;
    std::set<NodeIndex> visited{link.a};
    NodeIndex at = link.a;
    for (const auto e : link.realization) {
      if (e < 0 || static_cast<std::size_t>(e) >= inst.transport_edges.size()) return "BROKEN_REALIZATION: " + where;
      const auto& te = inst.transport_edges[static_cast<std::size_t>(e)];
      const NodeIndex next = te.a == at ? te.b : (te.b == at ? te.a : -1);
      if (next < 0 || !visited.insert(next).second) return "BROKEN_REALIZATION: " + where;
      at = next;
    }
    if (at != link.b) return "BROKEN_REALIZATION: " + where;
  }

  std::map<EdgeId, Bandwidth> load;
  for (std::size_t d = 0; d < inst.demands.size(); ++d) {
    const auto& dem = inst.demands[d];
    const std::string where = "demand " + std::to_string(d);
    const auto it = sol.flow.routes.find(d);
    if (it == sol.flow.routes.end() || it->second.empty()) return "MISSING_ROUTE: " + where;
    std::set<NodeIndex> visited{dem.src};
    std::set<EdgeId> used;
    NodeIndex at = dem.src;
    for (const EdgeId id : it->second) {
      const auto link = links.find(id);
      if (link == links.end()) return "ROUTE_USES_UNKNOWN_LINK: " + where;
      if (!used.insert(id).second) return "ROUTE_NOT_SIMPLE: " + where;
      const LogicalLink& l = *link->second;
      const NodeIndex next = l.a == at ? l.b : (l.b == at ? l.a : -1);
      if (next < 0) return "ROUTE_DISCONNECTED: " + where;
      if (!visited.insert(next).second) return "ROUTE_NOT_SIMPLE: " + where;
      at = next;
      load[id] += dem.rate;
    }
    if (at != dem.dst) return "ROUTE_WRONG_END: " + where;
  }
  for (const auto& [d, route] : sol.flow.routes) {
    if (d >= inst.demands.size()) return "EXTRA_ROUTE: demand " + std::to_string(d);
  }

  for (const auto& [id, value] : sol.flow.link_load) {
    if (!links.count(id)) return "LOAD_ON_UNKNOWN_LINK: logical link " + std::to_string(id);
  }
  for (const auto& link : sol.logical_links) {
    const Bandwidth expected = load.count(link.id) ? load.at(link.id) : 0.0;
    const auto reported = sol.flow.link_load.find(link.id);
    const Bandwidth got = reported == sol.flow.link_load.end() ? 0.0 : reported->second;
    if (std::fabs(expected - got) > 1e-6 * std::max(1.0, expected)) {
      return "LOAD_MISMATCH: logical link " + std::to_string(link.id);
    }
    if (link.channels != channels_for(expected, inst.cost.channel_capacity)) {
      return "CHANNEL_COVERAGE: logical link " + std::to_string(link.id) + " has " + std::to_string(link.channels) +
             " channels for load " + std::to_string(expected);
    }
  }
  return std::nullopt;
}

/// lsr_total + channel_total, where a logical link costs its channel count
/// times the summed channel price of its realization.
inline CostBreakdown evaluate_cost(const Instance& inst, const Solution& sol) {
  if (auto violation = check_feasibility(inst, sol)) {
    throw Error(ErrorCode::kInfeasibleSolution, *violation, {*violation});
  }
  CostBreakdown cost;
  for (const NodeIndex v : sol.lsr_nodes) cost.lsr_total += inst.cost.lsr_cost[static_cast<std::size_t>(v)];
  for (const auto& link : sol.logical_links) {
    Cost per_channel = 0;
    for (const auto e : link.realization) per_channel += inst.cost.channel_cost[static_cast<std::size_t>(e)];
    cost.channel_total += link.channels * per_channel;
  }
  cost.grand_total = cost.lsr_total + cost.channel_total;
  return cost;
}

/// Builds a Solution from LSRs plus a flow assignment over links of `mlg`.
/// Every link in `fa.link_load` becomes a logical link of the solution.
inline Solution make_solution(const Instance& inst, const MultilayerGraph& mlg, std::vector<NodeIndex> lsr_nodes,
                              FlowAssignment fa) {
  Solution sol;
  std::sort(lsr_nodes.begin(), lsr_nodes.end());
  lsr_nodes.erase(std::unique(lsr_nodes.begin(), lsr_nodes.end()), lsr_nodes.end());
  sol.lsr_nodes = std::move(lsr_nodes);
  const CapacityPlan plan = assign_capacities(fa, inst.cost.channel_capacity);
  for (const auto& [id, channels] : plan.channels) {
    const MlgEdge* e = mlg.find_edge(id);
    if (e == nullptr || !mlg.is_logical_link(*e)) {
      throw Error(ErrorCode::kUnknownLogicalLink, "logical link " + std::to_string(id) + " not in graph");
    }
    LogicalLink link{id, e->u.node, e->v.node, {}, channels};
    for (const EdgeId t : e->realization) link.realization.push_back(static_cast<TransportEdgeIndex>(t));
    sol.logical_links.push_back(std::move(link));
  }
  sol.flow = std::move(fa);
  sol.cost = evaluate_cost(inst, sol);
  return sol;
}

}  // namespace mlsynth
