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

// Seeded micro-instances (3 to 5 nodes, 1 to 4 demands) for oracle checks.

#include <cstdint>
#include <string>
#include <vector>

#include "mlsynth/instance.hpp"

namespace mlsynth::testing {

inline VariantParams micro_params(std::size_t i) {
  const int n = 3 + static_cast<int>(i % 3);
  static constexpr double kDensities[] = {0.5, 0.7, 1.0};
  VariantParams p;
  p.tag = "micro";
  p.edge_density = n == 3 ? 1.0 : kDensities[(i / 3) % 3];
  if (n == 5 && p.edge_density < 0.5) p.edge_density = 0.5;
  p.demand_count = 1 + static_cast<std::int64_t>((i / 9) % 4);
  p.rate_range = {1, 8};
  p.lsr_cost_range = {3, 30};
  p.channel_cost_range = {2, 15};
  p.channel_capacity = 10;
  return p;
}

inline Instance micro_instance(std::size_t i) {
  return generate_instance(3 + static_cast<int>(i % 3), micro_params(i), 1000 + i);
}

inline constexpr std::size_t kMicroSuiteSize = 200;

}  // namespace mlsynth::testing
