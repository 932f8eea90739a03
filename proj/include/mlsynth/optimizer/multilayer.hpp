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

// Minimum-weight multilayer subgraph search.
//
// The search state is an overlay (active LSRs), a single-path route per
// demand over the candidate logical links of the redundant graph, and the
// resulting link loads. Cost is the LSR equipment of active nodes plus, per
// logical link, ceil(load / capacity) channels at the price of its
// realization. Moves, scanned in a fixed order and accepted on strict
// improvement:
//
//   reroute(d)   re-insert demand d on its cheapest marginal-cost path
//   swap(L)      move all traffic of L onto a parallel link between the
//                same LSRs with a different realization
//   drop(v)      remove a non-endpoint LSR and re-insert the demands that
//                transited it over express links that bypass it
//   add(v)       activate an LSR and re-insert every demand that gains
//
// Costs are integers, so strict improvement terminates. Restart 0 starts
// from the full-LSR baseline projected into the redundant graph; the result
// is therefore never worse than the baseline.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "mlsynth/builder.hpp"
#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/mlg_model.hpp"
#include "mlsynth/optimizer/baseline.hpp"
#include "mlsynth/optimizer/evaluate.hpp"
#include "mlsynth/random.hpp"
#include "mlsynth/solution.hpp"

namespace mlsynth {

struct SearchParams {
  std::int64_t max_iters = 100000;  // accepted moves per restart
  int restarts = 4;
  std::uint64_t seed = 1;
};

struct SearchStats {
  std::int64_t moves = 0;
  bool hit_iteration_limit = false;
  std::vector<Cost> restart_costs;  // final cost of each restart; -1 if its start was infeasible
};

struct MultilayerResult {
  Solution solution;
  SearchStats stats;
};

namespace search_detail {

struct LinkInfo {
  EdgeId id;
  NodeIndex a;
  NodeIndex b;
  Cost price;  // per channel
  std::vector<EdgeId> realization;
};

// Read-only view of the redundant graph shaped for the search.
class OverlayModel {
 public:
  OverlayModel(const Instance& inst, const MultilayerGraph& mlg)
      : inst_(inst), rank_(node_ranks(inst)), capacity_(inst.cost.channel_capacity) {
    const auto n = static_cast<std::size_t>(inst.node_count());
    candidate_.assign(n, 0);
    endpoint_.assign(n, 0);
    for (const auto& v : mlg.vertices) {
      if (v.layer.kind == LayerKind::kMpls) candidate_[static_cast<std::size_t>(v.node)] = 1;
    }
    for (const auto& d : inst.demands) {
      endpoint_[static_cast<std::size_t>(d.src)] = 1;
      endpoint_[static_cast<std::size_t>(d.dst)] = 1;
    }
    rank_order_.resize(n);
    std::iota(rank_order_.begin(), rank_order_.end(), NodeIndex{0});
    std::sort(rank_order_.begin(), rank_order_.end(),
              [&](NodeIndex x, NodeIndex y) { return rank_[static_cast<std::size_t>(x)] < rank_[static_cast<std::size_t>(y)]; });

    std::map<EdgeId, int> index_of;
    for (const auto& e : mlg.edges) {
      if (!mlg.is_logical_link(e)) continue;
      index_of[e.id] = static_cast<int>(links_.size());
      links_.push_back({e.id, e.u.node, e.v.node, e.weight, e.realization});
    }
    adjacency_.resize(n);
    std::map<std::pair<NodeIndex, NodeIndex>, std::vector<int>> by_pair;
    for (int l = 0; l < static_cast<int>(links_.size()); ++l) {
      const auto& link = links_[static_cast<std::size_t>(l)];
      adjacency_[static_cast<std::size_t>(link.a)].push_back({l, link.b});
      adjacency_[static_cast<std::size_t>(link.b)].push_back({l, link.a});
      by_pair[std::minmax(link.a, link.b)].push_back(l);
      if (link.realization.size() == 1) single_hop_[link.realization.front()] = l;
    }
    parallel_.resize(links_.size());
    for (const auto& [pair, group] : by_pair) {
      for (const int l : group) {
        for (const int other : group) {
          if (other != l) parallel_[static_cast<std::size_t>(l)].push_back(other);
        }
      }
    }

    usable_.assign(inst.demands.size(), std::vector<char>(links_.size(), 0));
    for (const auto& e : mlg.edges) {
      if (e.kind != EdgeKind::kIntraLayer || e.u.layer.kind != LayerKind::kFlow || !e.mirrors) continue;
      const std::size_t d = *e.u.layer.flow_index;
      const auto it = index_of.find(*e.mirrors);
      if (d < usable_.size() && it != index_of.end()) usable_[d][static_cast<std::size_t>(it->second)] = 1;
    }

    order_.resize(inst.demands.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t x, std::size_t y) { return inst.demands[x].rate > inst.demands[y].rate; });
  }

  struct Arc {
    int link;
    NodeIndex to;
  };

  const Instance& inst() const { return inst_; }
  std::size_t node_count() const { return candidate_.size(); }
  std::size_t link_count() const { return links_.size(); }
  const LinkInfo& link(int l) const { return links_[static_cast<std::size_t>(l)]; }
  const std::vector<Arc>& arcs(NodeIndex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& parallel(int l) const { return parallel_[static_cast<std::size_t>(l)]; }
  bool usable(std::size_t d, int l) const { return usable_[d][static_cast<std::size_t>(l)] != 0; }
  bool candidate(NodeIndex v) const { return candidate_[static_cast<std::size_t>(v)] != 0; }
  bool endpoint(NodeIndex v) const { return endpoint_[static_cast<std::size_t>(v)] != 0; }
  Cost lsr_cost(NodeIndex v) const { return inst_.cost.lsr_cost[static_cast<std::size_t>(v)]; }
  Bandwidth capacity() const { return capacity_; }
  const std::vector<NodeIndex>& rank_order() const { return rank_order_; }
  const std::vector<std::size_t>& demand_order() const { return order_; }

  std::optional<int> single_hop_link(EdgeId transport_edge) const {
    const auto it = single_hop_.find(transport_edge);
    if (it == single_hop_.end()) return std::nullopt;
    return it->second;
  }

  Cost link_cost(int l, Bandwidth load) const { return channels_for(load, capacity_) * link(l).price; }

 private:
  const Instance& inst_;
  std::vector<int> rank_;
  Bandwidth capacity_;
  std::vector<char> candidate_;
  std::vector<char> endpoint_;
  std::vector<NodeIndex> rank_order_;
  std::vector<LinkInfo> links_;
  std::vector<std::vector<Arc>> adjacency_;
  std::vector<std::vector<int>> parallel_;
  std::map<EdgeId, int> single_hop_;
  std::vector<std::vector<char>> usable_;
  std::vector<std::size_t> order_;
};

struct State {
  std::vector<char> active;
  std::vector<std::vector<int>> routes;  // link indices, src to dst
  std::vector<Bandwidth> load;
  Cost cost = 0;
};

class LocalSearch {
 public:
  explicit LocalSearch(const OverlayModel& model) : m_(model) {}

  State empty_state(std::vector<char> active) const {
    State s;
    s.active = std::move(active);
    s.routes.assign(m_.inst().demands.size(), {});
    s.load.assign(m_.link_count(), 0.0);
    for (NodeIndex v = 0; v < static_cast<NodeIndex>(m_.node_count()); ++v) {
      if (s.active[static_cast<std::size_t>(v)]) s.cost += m_.lsr_cost(v);
    }
    return s;
  }

  void apply_route(State& s, std::size_t d, std::vector<int> route) const {
    const Bandwidth rate = m_.inst().demands[d].rate;
    for (const int l : route) {
      auto& load = s.load[static_cast<std::size_t>(l)];
      s.cost += m_.link_cost(l, load + rate) - m_.link_cost(l, load);
      load += rate;
    }
    s.routes[d] = std::move(route);
  }

  void remove(State& s, std::size_t d) const {
    const Bandwidth rate = m_.inst().demands[d].rate;
    for (const int l : s.routes[d]) {
      auto& load = s.load[static_cast<std::size_t>(l)];
      Bandwidth next = load - rate;
      if (next < kLoadEpsilon) next = 0;
      s.cost += m_.link_cost(l, next) - m_.link_cost(l, load);
      load = next;
    }
    s.routes[d].clear();
  }

  // Cheapest path for demand d given current loads, over active LSRs: each
  // link is priced at the channels its extra load would buy. Equal prices
  // prefer fewer logical hops, then lower node rank.
  bool insert(State& s, std::size_t d) const {
    const Demand& dem = m_.inst().demands[d];
    const std::size_t n = m_.node_count();
    constexpr Cost kInf = std::numeric_limits<Cost>::max();
    std::vector<Cost> cost(n, kInf);
    std::vector<int> hops(n, 0);
    std::vector<int> via(n, -1);
    std::vector<char> done(n, 0);
    cost[static_cast<std::size_t>(dem.src)] = 0;
    while (true) {
      NodeIndex u = -1;
      for (const NodeIndex v : m_.rank_order()) {
        const auto vi = static_cast<std::size_t>(v);
        if (done[vi] || cost[vi] == kInf) continue;
        if (u < 0 || std::pair(cost[vi], hops[vi]) <
                         std::pair(cost[static_cast<std::size_t>(u)], hops[static_cast<std::size_t>(u)])) {
          u = v;
        }
      }
      if (u < 0) return false;
      const auto ui = static_cast<std::size_t>(u);
      done[ui] = 1;
      if (u == dem.dst) break;
      for (const auto& arc : m_.arcs(u)) {
        const auto wi = static_cast<std::size_t>(arc.to);
        if (done[wi] || !s.active[wi] || !m_.usable(d, arc.link)) continue;
        const Bandwidth load = s.load[static_cast<std::size_t>(arc.link)];
        const Cost c = cost[ui] + m_.link_cost(arc.link, load + dem.rate) - m_.link_cost(arc.link, load);
        if (std::pair(c, hops[ui] + 1) < std::pair(cost[wi], hops[wi])) {
          cost[wi] = c;
          hops[wi] = hops[ui] + 1;
          via[wi] = arc.link;
        }
      }
    }
    std::vector<int> route;
    for (NodeIndex at = dem.dst; at != dem.src;) {
      const int l = via[static_cast<std::size_t>(at)];
      route.push_back(l);
      at = m_.link(l).a == at ? m_.link(l).b : m_.link(l).a;
    }
    std::reverse(route.begin(), route.end());
    apply_route(s, d, std::move(route));
    return true;
  }

  bool try_reroute(State& s, std::size_t d) const {
    const Cost before = s.cost;
    std::vector<int> old = s.routes[d];
    remove(s, d);
    if (insert(s, d) && s.cost < before) return true;
    remove(s, d);
    apply_route(s, d, std::move(old));
    return false;
  }

  bool try_swap(State& s, int l) const {
    const Bandwidth moved = s.load[static_cast<std::size_t>(l)];
    if (moved <= 0) return false;
    std::vector<std::size_t> riders;
    for (std::size_t d = 0; d < s.routes.size(); ++d) {
      if (std::find(s.routes[d].begin(), s.routes[d].end(), l) != s.routes[d].end()) riders.push_back(d);
    }
    for (const int alt : m_.parallel(l)) {
      if (!std::all_of(riders.begin(), riders.end(), [&](std::size_t d) { return m_.usable(d, alt); })) continue;
      const Bandwidth alt_load = s.load[static_cast<std::size_t>(alt)];
      const Cost delta = m_.link_cost(alt, alt_load + moved) - m_.link_cost(alt, alt_load) - m_.link_cost(l, moved);
      if (delta >= 0) continue;
      for (const std::size_t d : riders) std::replace(s.routes[d].begin(), s.routes[d].end(), l, alt);
      s.load[static_cast<std::size_t>(alt)] = alt_load + moved;
      s.load[static_cast<std::size_t>(l)] = 0;
      s.cost += delta;
      return true;
    }
    return false;
  }

  bool try_drop(State& s, NodeIndex v) const {
    if (!s.active[static_cast<std::size_t>(v)] || m_.endpoint(v)) return false;
    State trial = s;
    trial.active[static_cast<std::size_t>(v)] = 0;
    trial.cost -= m_.lsr_cost(v);
    std::vector<std::size_t> affected;
    for (const std::size_t d : m_.demand_order()) {
      const auto& route = trial.routes[d];
      if (std::any_of(route.begin(), route.end(), [&](int l) { return m_.link(l).a == v || m_.link(l).b == v; })) {
        affected.push_back(d);
      }
    }
    for (const std::size_t d : affected) remove(trial, d);
    for (const std::size_t d : affected) {
      if (!insert(trial, d)) return false;
    }
    if (trial.cost >= s.cost) return false;
    s = std::move(trial);
    return true;
  }

  bool try_add(State& s, NodeIndex v) const {
    if (s.active[static_cast<std::size_t>(v)] || !m_.candidate(v)) return false;
    State trial = s;
    trial.active[static_cast<std::size_t>(v)] = 1;
    trial.cost += m_.lsr_cost(v);
    for (const std::size_t d : m_.demand_order()) try_reroute(trial, d);
    if (trial.cost >= s.cost) return false;
    s = std::move(trial);
    return true;
  }

  // First-improvement descent; returns the number of accepted moves.
  std::int64_t descend(State& s, std::int64_t max_moves, bool& hit_limit) const {
    std::int64_t moves = 0;
    const auto accept = [&] { return ++moves >= max_moves; };
    bool improved = true;
    while (improved) {
      improved = false;
      for (const std::size_t d : m_.demand_order()) {
        if (try_reroute(s, d)) {
          improved = true;
          if (accept()) return hit_limit = true, moves;
        }
      }
      for (int l = 0; l < static_cast<int>(m_.link_count()); ++l) {
        if (try_swap(s, l)) {
          improved = true;
          if (accept()) return hit_limit = true, moves;
        }
      }
      for (const NodeIndex v : m_.rank_order()) {
        if (try_drop(s, v)) {
          improved = true;
          if (accept()) return hit_limit = true, moves;
        }
      }
      for (const NodeIndex v : m_.rank_order()) {
        if (try_add(s, v)) {
          improved = true;
          if (accept()) return hit_limit = true, moves;
        }
      }
    }
    return moves;
  }

 private:
  const OverlayModel& m_;
};

// Orders equal-cost results so the choice never depends on restart order.
inline auto state_key(const OverlayModel& m, const State& s) {
  std::vector<NodeIndex> active;
  for (NodeIndex v = 0; v < static_cast<NodeIndex>(s.active.size()); ++v) {
    if (s.active[static_cast<std::size_t>(v)]) active.push_back(v);
  }
  std::vector<std::vector<EdgeId>> routes;
  for (const auto& r : s.routes) {
    std::vector<EdgeId> ids;
    for (const int l : r) ids.push_back(m.link(l).id);
    routes.push_back(std::move(ids));
  }
  return std::tuple(s.cost, std::move(active), std::move(routes));
}

}  // namespace search_detail

/// Local search over an already built redundant graph. `baseline` is the
/// full-LSR solution used to seed restart 0; it is computed when absent.
inline MultilayerResult run_multilayer_search(const Instance& inst, const MultilayerGraph& mlg,
                                              const SearchParams& search, const Solution* baseline = nullptr) {
  using namespace search_detail;
  if (search.restarts < 1) throw Error(ErrorCode::kParamsInfeasible, "restarts must be at least 1");
  if (search.max_iters < 1) throw Error(ErrorCode::kParamsInfeasible, "max_iters must be at least 1");
  const OverlayModel model(inst, mlg);
  const LocalSearch ls(model);
  const auto n = static_cast<NodeIndex>(model.node_count());

  std::optional<Solution> computed_baseline;
  if (baseline == nullptr) baseline = &computed_baseline.emplace(solve_full_lsr_baseline(inst));

  const auto fill_greedy = [&](std::vector<char> active) -> std::optional<State> {
    State s = ls.empty_state(std::move(active));
    for (const std::size_t d : model.demand_order()) {
      if (!ls.insert(s, d)) return std::nullopt;
    }
    return s;
  };

  const auto project_baseline = [&]() -> std::optional<State> {
    std::vector<char> active(static_cast<std::size_t>(n), 0);
    for (const NodeIndex v : baseline->lsr_nodes) {
      if (!model.candidate(v)) return std::nullopt;
      active[static_cast<std::size_t>(v)] = 1;
    }
    State s = ls.empty_state(std::move(active));
    for (const auto& [d, ids] : baseline->flow.routes) {
      std::vector<int> route;
      for (const EdgeId id : ids) {
        const LogicalLink* link = baseline->find_link(id);
        if (link == nullptr || link->realization.size() != 1) return std::nullopt;
        const auto l = model.single_hop_link(link->realization.front());
        if (!l || !model.usable(d, *l)) return std::nullopt;
        route.push_back(*l);
      }
      ls.apply_route(s, d, std::move(route));
    }
    return s;
  };

  SearchStats stats;
  std::optional<State> best;
  for (int r = 0; r < search.restarts; ++r) {
    std::optional<State> start;
    std::vector<char> active(static_cast<std::size_t>(n), 0);
    for (NodeIndex v = 0; v < n; ++v) active[static_cast<std::size_t>(v)] = model.endpoint(v);
    if (r == 0) {
      start = project_baseline();
      if (!start) start = fill_greedy(active);
    } else if (r == 1) {
      start = fill_greedy(active);
    } else if (r == 2) {
      for (NodeIndex v = 0; v < n; ++v) active[static_cast<std::size_t>(v)] = model.candidate(v);
      start = fill_greedy(active);
    } else {
      Rng rng(mix_seed(search.seed, static_cast<std::uint64_t>(r)));
      for (const NodeIndex v : model.rank_order()) {
        if (model.candidate(v) && !model.endpoint(v) && coin_flip(rng)) active[static_cast<std::size_t>(v)] = 1;
      }
      start = fill_greedy(active);
    }
    if (!start) {
      stats.restart_costs.push_back(-1);
      continue;
    }
    bool hit = false;
    stats.moves += ls.descend(*start, search.max_iters, hit);
    stats.hit_iteration_limit = stats.hit_iteration_limit || hit;
    stats.restart_costs.push_back(start->cost);
    if (!best || state_key(model, *start) < state_key(model, *best)) best = std::move(start);
  }
  if (!best) {
    throw Error(ErrorCode::kUnroutable, "no restart produced a routable overlay");
  }

  FlowAssignment fa;
  std::vector<NodeIndex> lsrs;
  for (NodeIndex v = 0; v < n; ++v) {
    if (best->active[static_cast<std::size_t>(v)]) lsrs.push_back(v);
  }
  for (std::size_t d = 0; d < best->routes.size(); ++d) {
    std::vector<EdgeId> ids;
    for (const int l : best->routes[d]) ids.push_back(model.link(l).id);
    fa.routes.emplace(d, std::move(ids));
  }
  // Fresh sums; the incremental loads may carry rounding from removals.
  for (const auto& [d, ids] : fa.routes) {
    for (const EdgeId id : ids) fa.link_load[id] += inst.demands[d].rate;
  }
  MultilayerResult result{make_solution(inst, mlg, std::move(lsrs), std::move(fa)), std::move(stats)};
  return result;
}

inline Solution solve_multilayer(const Instance& inst, const BuilderParams& builder, const SearchParams& search) {
  validate_instance(inst);
  const MultilayerGraph mlg = build_redundant_mlg(inst, builder);
  return run_multilayer_search(inst, mlg, search).solution;
}

}  // namespace mlsynth
