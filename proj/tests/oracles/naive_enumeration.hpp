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

// Test-only brute-force oracle for tiny instances. Shares no code with the
// builder or the optimizers beyond the Instance type and channels_for.
//
// For every LSR subset S containing all demand endpoints, every demand picks
// any simple sequence of LSRs in S from its source to its destination; each
// consecutive pair is a logical link. A pair's traffic is carried on its
// cheapest transport realization, found by enumerating every simple transport
// path. (Putting a pair's traffic on one cheapest realization is never worse
// than splitting it, since ceil(a/c) + ceil(b/c) >= ceil((a+b)/c); the
// dominance test in test_optimizer checks this claim directly.)

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "mlsynth/instance.hpp"
#include "mlsynth/solution.hpp"

namespace mlsynth::oracle {

/// Every simple transport path from `from` to `to`, as edge-index lists.
inline std::vector<std::vector<TransportEdgeIndex>> all_simple_paths(const Instance& inst, NodeIndex from,
                                                                     NodeIndex to) {
  std::vector<std::vector<TransportEdgeIndex>> out;
  std::vector<TransportEdgeIndex> path;
  std::vector<char> seen(inst.nodes.size(), 0);
  std::function<void(NodeIndex)> dfs = [&](NodeIndex at) {
    if (at == to) {
      out.push_back(path);
      return;
    }
    seen[static_cast<std::size_t>(at)] = 1;
    for (std::size_t e = 0; e < inst.transport_edges.size(); ++e) {
      const auto& edge = inst.transport_edges[e];
      NodeIndex next = -1;
      if (edge.a == at) next = edge.b;
      if (edge.b == at) next = edge.a;
      if (next < 0 || seen[static_cast<std::size_t>(next)]) continue;
      path.push_back(static_cast<TransportEdgeIndex>(e));
      dfs(next);
      path.pop_back();
    }
    seen[static_cast<std::size_t>(at)] = 0;
  };
  dfs(from);
  return out;
}

inline Cost path_cost(const Instance& inst, const std::vector<TransportEdgeIndex>& path) {
  Cost c = 0;
  for (const auto e : path) c += inst.cost.channel_cost[static_cast<std::size_t>(e)];
  return c;
}

/// Cheapest realization cost for every ordered node pair.
inline std::vector<std::vector<Cost>> cheapest_realizations(const Instance& inst) {
  const std::size_t n = inst.nodes.size();
  std::vector<std::vector<Cost>> best(n, std::vector<Cost>(n, std::numeric_limits<Cost>::max()));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      for (const auto& p : all_simple_paths(inst, static_cast<NodeIndex>(a), static_cast<NodeIndex>(b))) {
        best[a][b] = std::min(best[a][b], path_cost(inst, p));
      }
    }
  }
  return best;
}

/// Simple node sequences from src to dst using only nodes in `mask`.
inline std::vector<std::vector<NodeIndex>> lsr_sequences(std::size_t n, std::uint32_t mask, NodeIndex src,
                                                         NodeIndex dst) {
  std::vector<std::vector<NodeIndex>> out;
  std::vector<NodeIndex> seq{src};
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t used) {
    if (seq.back() == dst) {
      out.push_back(seq);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint32_t bit = 1u << v;
      if (!(mask & bit) || (used & bit)) continue;
      seq.push_back(static_cast<NodeIndex>(v));
      dfs(used | bit);
      seq.pop_back();
    }
  };
  dfs(1u << src);
  return out;
}

/// Minimum total cost over all overlays. Returns max() if nothing is
/// feasible (only possible for a disconnected instance).
inline Cost minimum_cost(const Instance& inst) {
  const std::size_t n = inst.nodes.size();
  const auto price = cheapest_realizations(inst);
  std::uint32_t required = 0;
  for (const auto& d : inst.demands) required |= (1u << d.src) | (1u << d.dst);

  Cost best = std::numeric_limits<Cost>::max();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask & required) != required) continue;
    Cost lsr = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask & (1u << v)) lsr += inst.cost.lsr_cost[v];
    }
    std::vector<std::vector<std::vector<NodeIndex>>> options;
    bool routable = true;
    for (const auto& d : inst.demands) {
      options.push_back(lsr_sequences(n, mask, d.src, d.dst));
      routable = routable && !options.back().empty();
    }
    if (!routable) continue;

    std::vector<std::size_t> pick(inst.demands.size(), 0);
    while (true) {
      std::map<std::pair<NodeIndex, NodeIndex>, Bandwidth> load;
      for (std::size_t d = 0; d < pick.size(); ++d) {
        const auto& seq = options[d][pick[d]];
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
          load[std::minmax(seq[i], seq[i + 1])] += inst.demands[d].rate;
        }
      }
      Cost total = lsr;
      for (const auto& [pair, l] : load) {
        total += channels_for(l, inst.cost.channel_capacity) *
                 price[static_cast<std::size_t>(pair.first)][static_cast<std::size_t>(pair.second)];
      }
      best = std::min(best, total);

      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return best;
}

/// Same optimum without the dominance shortcut: every hop of every route
/// picks its own realization, and links with different realizations are
/// distinct. Exponentially slower; meant for three or four nodes and at most
/// two demands.
inline Cost minimum_cost_any_realization(const Instance& inst) {
  const std::size_t n = inst.nodes.size();
  std::vector<std::vector<std::vector<std::vector<TransportEdgeIndex>>>> paths(
      n, std::vector<std::vector<std::vector<TransportEdgeIndex>>>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) paths[a][b] = all_simple_paths(inst, static_cast<NodeIndex>(a), static_cast<NodeIndex>(b));
    }
  }
  const std::uint32_t all = (1u << n) - 1;

  // Each demand's choices: (LSR sequence, realization per hop), flattened.
  using Hop = std::pair<std::pair<NodeIndex, NodeIndex>, std::vector<TransportEdgeIndex>>;
  std::vector<std::vector<std::vector<Hop>>> choices;
  for (const auto& d : inst.demands) {
    std::vector<std::vector<Hop>> routes;
    for (const auto& seq : lsr_sequences(n, all, d.src, d.dst)) {
      std::vector<Hop> hops;
      std::function<void(std::size_t)> expand = [&](std::size_t i) {
        if (i + 1 == seq.size()) {
          routes.push_back(hops);
          return;
        }
        const auto lo = std::min(seq[i], seq[i + 1]);
        const auto hi = std::max(seq[i], seq[i + 1]);
        for (const auto& p : paths[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)]) {
          hops.push_back({{lo, hi}, p});
          expand(i + 1);
          hops.pop_back();
        }
      };
      expand(0);
    }
    choices.push_back(std::move(routes));
  }

  Cost best = std::numeric_limits<Cost>::max();
  std::vector<std::size_t> pick(inst.demands.size(), 0);
  while (true) {
    std::map<Hop, Bandwidth> load;
    std::uint32_t lsrs = 0;
    for (std::size_t d = 0; d < pick.size(); ++d) {
      lsrs |= (1u << inst.demands[d].src) | (1u << inst.demands[d].dst);
      for (const auto& hop : choices[d][pick[d]]) {
        load[hop] += inst.demands[d].rate;
        lsrs |= (1u << hop.first.first) | (1u << hop.first.second);
      }
    }
    Cost total = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (lsrs & (1u << v)) total += inst.cost.lsr_cost[v];
    }
    for (const auto& [hop, l] : load) total += channels_for(l, inst.cost.channel_capacity) * path_cost(inst, hop.second);
    best = std::min(best, total);

    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return best;
}

}  // namespace mlsynth::oracle
