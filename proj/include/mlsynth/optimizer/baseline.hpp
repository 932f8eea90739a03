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

#include <vector>

#include "mlsynth/builder.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/optimizer/evaluate.hpp"
#include "mlsynth/routing.hpp"

namespace mlsynth {

// Full-LSR comparison method: an LSR on every node, one logical link per
// transport edge, shortest-hop routing with grooming at every node.
// Logical link ids refer to build_full_lsr_mlg(inst).
inline Solution solve_full_lsr_baseline(const Instance& inst) {
  const MultilayerGraph mlg = build_full_lsr_mlg(inst);
  OverlaySelection selection;
  for (const auto& v : mlg.vertices) {
    if (v.layer.kind == LayerKind::kMpls) selection.lsr_nodes.push_back(v.node);
  }
  for (const auto& e : mlg.edges) {
    if (mlg.is_logical_link(e)) selection.logical_links.push_back(e.id);
  }
  FlowAssignment fa = route_flows(inst, mlg, selection);
  return make_solution(inst, mlg, selection.lsr_nodes, std::move(fa));
}

}  // namespace mlsynth
