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

#include <filesystem>
#include <set>

#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/instance_io.hpp"
#include "test_support.hpp"

namespace mlsynth {
namespace {

template <typename F>
Error capture(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no mlsynth::Error thrown";
  return Error(ErrorCode::kIoError, "none");
}

bool connected(const Instance& inst) {
  const auto dist = Topology(inst).hop_distances(0);
  return std::ranges::all_of(dist, [](int d) { return d >= 0; });
}

TEST(Generate, DeterministicBytes) {
  const auto p = variant_preset(1, 20);
  EXPECT_EQ(instance_to_string(generate_instance(20, p, 7)), instance_to_string(generate_instance(20, p, 7)));
  EXPECT_NE(instance_to_string(generate_instance(20, p, 7)), instance_to_string(generate_instance(20, p, 8)));
}

TEST(Generate, FullDensityThreeNodesIsTriangle) {
  VariantParams p;
  p.tag = "tri";
  p.edge_density = 1.0;
  p.demand_count = 1;
  p.rate_range = {1, 5};
  p.lsr_cost_range = {5, 5};
  p.channel_cost_range = {10, 10};
  const Instance inst = generate_instance(3, p, 1);
  EXPECT_EQ(inst.nodes.size(), 3u);
  EXPECT_EQ(inst.transport_edges.size(), 3u);
  EXPECT_EQ(inst.demands.size(), 1u);
  EXPECT_TRUE(instance_violations(inst).empty());
}

TEST(Generate, SuiteGridHas56Instances) {
  std::set<std::string> distinct;
  int count = 0;
  for (int n = 20; n <= 50; n += 5) {
    for (int v = 1; v <= kVariantCount; ++v) {
      const Instance inst = generate_instance(n, variant_preset(v, n), 1);
      EXPECT_EQ(inst.meta.node_count, n);
      EXPECT_EQ(inst.meta.variant, std::to_string(v));
      distinct.insert(instance_to_string(inst));
      ++count;
    }
  }
  EXPECT_EQ(count, 56);
  EXPECT_EQ(distinct.size(), 56u);
}

TEST(Generate, ValidForThousandSeeds) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 3 + static_cast<int>(seed % 48);
    const int variant = 1 + static_cast<int>(seed % kVariantCount);
    const Instance inst = generate_instance(n, variant_preset(variant, n), seed);
    ASSERT_TRUE(instance_violations(inst).empty()) << "seed " << seed << ": " << instance_violations(inst)[0];
    ASSERT_TRUE(connected(inst));
    for (const auto& d : inst.demands) {
      ASSERT_NE(d.src, d.dst);
      ASSERT_GT(d.rate, 0);
    }
  }
}

TEST(Generate, PresetsKeepRatesBelowCapacity) {
  for (int v = 1; v <= kVariantCount; ++v) {
    const auto p = variant_preset(v, 30);
    EXPECT_LT(p.rate_range.hi, p.channel_capacity) << "variant " << v;
    EXPECT_GT(p.demand_count, 0);
  }
}

TEST(Generate, InfeasibleParams) {
  VariantParams p = variant_preset(1, 20);
  EXPECT_EQ(capture([&] { generate_instance(2, p, 1); }).code(), ErrorCode::kParamsInfeasible);
  p.edge_density = 0.01;
  EXPECT_EQ(capture([&] { generate_instance(20, p, 1); }).code(), ErrorCode::kParamsInfeasible);
  p.edge_density = 1.5;
  EXPECT_EQ(capture([&] { generate_instance(20, p, 1); }).code(), ErrorCode::kParamsInfeasible);
  EXPECT_EQ(capture([&] { variant_preset(9, 20); }).code(), ErrorCode::kParamsInfeasible);
}

TEST(InstanceIo, RoundTripGenerated) {
  const Instance inst = generate_instance(20, variant_preset(3, 20), 4);
  const std::string text = instance_to_string(inst);
  const Instance back = instance_from_string(text);
  EXPECT_EQ(back, inst);
  EXPECT_EQ(instance_to_string(back), text);
}

TEST(InstanceIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "mlsynth_instance_io_test.json";
  const Instance inst = generate_instance(25, variant_preset(6, 25), 9);
  write_instance(inst, path);
  EXPECT_EQ(read_instance(path), inst);
  std::filesystem::remove(path);
}

TEST(InstanceIo, CanonicalFormSortsKeysAndTrimsNumbers) {
  const std::string scrambled = R"({"meta":{"seed":0,"variant":"x","node_count":2},
    "demands":[{"rate":4.0,"dst":"b","src":"a"}],
    "cost":{"channel_capacity":10.0,"lsr_cost":{"b":5,"a":5},"channel_cost":{"ab":10}},
    "transport_edges":[{"b":"b","a":"a","id":"ab"}],"nodes":["a","b"]})";
  const std::string canonical = instance_to_string(instance_from_string(scrambled));
  EXPECT_EQ(canonical.find("4.0"), std::string::npos);
  EXPECT_LT(canonical.find("\"cost\""), canonical.find("\"demands\""));
  EXPECT_LT(canonical.find("\"demands\""), canonical.find("\"meta\""));
  EXPECT_EQ(instance_to_string(instance_from_string(canonical)), canonical);
}

TEST(InstanceIo, DemandSelfLoopNamesIndex) {
  Instance inst = testing::triangle();
  inst.demands.push_back({1, 1, 2});
  const Error e = capture([&] { instance_from_string(instance_to_string(inst)); });
  EXPECT_EQ(e.code(), ErrorCode::kValidationError);
  EXPECT_NE(std::string(e.what()).find("DEMAND_SELF_LOOP"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("demands[1]"), std::string::npos);
}

TEST(InstanceIo, DisconnectedGraph) {
  const Instance inst = testing::make_instance({"A", "B", "C", "D"}, {{"A", "B", 1}, {"C", "D", 1}}, {}, {1, 1, 1, 1});
  const Error e = capture([&] { instance_from_string(instance_to_string(inst)); });
  EXPECT_EQ(e.code(), ErrorCode::kValidationError);
  ASSERT_FALSE(e.details().empty());
  EXPECT_EQ(e.details().front().rfind("DISCONNECTED", 0), 0u);
}

TEST(InstanceIo, ParseErrorsCarryFieldPath) {
  EXPECT_EQ(capture([] { instance_from_string("{not json"); }).code(), ErrorCode::kParseError);
  std::string text = instance_to_string(testing::triangle());
  text.replace(text.find("\"rate\": 4"), 9, "\"rate\": \"x\"");
  const Error e = capture([&] { instance_from_string(text); });
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  EXPECT_NE(std::string(e.what()).find("$.demands[0].rate"), std::string::npos);
}

TEST(InstanceIo, UnknownNodeReference) {
  std::string text = instance_to_string(testing::triangle());
  text.replace(text.find("\"dst\": \"C\""), 10, "\"dst\": \"Z\"");
  EXPECT_EQ(capture([&] { instance_from_string(text); }).code(), ErrorCode::kValidationError);
}

TEST(InstanceIo, MissingFileIsIoError) {
  EXPECT_EQ(capture([] { read_instance("/nonexistent/dir/instance.json"); }).code(), ErrorCode::kIoError);
}

}  // namespace
}  // namespace mlsynth
