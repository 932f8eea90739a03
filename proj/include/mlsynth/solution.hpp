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

#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "mlsynth/instance.hpp"

namespace mlsynth {

using EdgeId = std::int64_t;

// Loads are sums of rates; the slack absorbs rounding in non-integral sums.
inline constexpr double kLoadEpsilon = 1e-9;

inline std::int64_t channels_for(Bandwidth load, Bandwidth channel_capacity) {
  if (load <= kLoadEpsilon) return 0;
  return static_cast<std::int64_t>(std::ceil(load / channel_capacity - kLoadEpsilon));
}

// Single-path routes keyed by demand ordinal, and the aggregate load each
// logical link carries.
struct FlowAssignment {
  std::map<std::size_t, std::vector<EdgeId>> routes;
  std::map<EdgeId, Bandwidth> link_load;

  friend bool operator==(const FlowAssignment&, const FlowAssignment&) = default;
};

struct CapacityPlan {
  std::map<EdgeId, std::int64_t> channels;

  friend bool operator==(const CapacityPlan&, const CapacityPlan&) = default;
};

struct CostBreakdown {
  Cost lsr_total = 0;
  Cost channel_total = 0;
  Cost grand_total = 0;

  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

// A logical link bought by a solution. `id` is the Mpls-layer edge id in the
// multilayer graph the solver worked on; `realization` lists transport edge
// indices from `a` to `b`.
struct LogicalLink {
  EdgeId id = -1;
  NodeIndex a = -1;
  NodeIndex b = -1;
  std::vector<TransportEdgeIndex> realization;
  std::int64_t channels = 0;

  friend bool operator==(const LogicalLink&, const LogicalLink&) = default;
};

struct Solution {
  std::vector<NodeIndex> lsr_nodes;       // sorted ascending
  std::vector<LogicalLink> logical_links;  // sorted by id
  FlowAssignment flow;
  CostBreakdown cost;

  const LogicalLink* find_link(EdgeId id) const {
    for (const auto& link : logical_links) {
      if (link.id == id) return &link;
    }
    return nullptr;
  }

  friend bool operator==(const Solution&, const Solution&) = default;
};

}  // namespace mlsynth
