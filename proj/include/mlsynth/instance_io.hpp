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

// Instance file format (UTF-8 JSON):
//
//   { "cost": { "channel_capacity": 10, "channel_cost": {"e0": 7, ...},
//               "lsr_cost": {"n0": 20, ...} },
//     "demands": [ {"dst": "n2", "rate": 3, "src": "n0"}, ... ],
//     "meta": { "node_count": 3, "seed": 7, "variant": "1" },
//     "nodes": ["n0", "n1", "n2"],
//     "transport_edges": [ {"a": "n0", "b": "n1", "id": "e0"}, ... ] }
//
// Canonical form: keys sorted, arrays in input order, integral numbers
// written without a fractional part, two-space indent, trailing newline.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"

namespace mlsynth {

namespace io_detail {

using nlohmann::json;

inline json number(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 9.0e15) {
    return static_cast<std::int64_t>(value);
  }
  return value;
}

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, path + ": " + what, {path + ": " + what});
}

inline const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected object");
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing field");
  return *it;
}

inline std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) field_error(path, "expected string");
  return value.get<std::string>();
}

inline double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) field_error(path, "expected number");
  return value.get<double>();
}

inline std::int64_t as_integer(const json& value, const std::string& path) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (v == std::floor(v) && std::fabs(v) < 9.0e15) return static_cast<std::int64_t>(v);
    field_error(path, "expected integer cost");
  }
  field_error(path, "expected integer");
}

inline const json& as_array(const json& value, const std::string& path) {
  if (!value.is_array()) field_error(path, "expected array");
  return value;
}

inline NodeIndex node_ref(const Instance& inst, const json& value, const std::string& path) {
  const std::string id = as_string(value, path);
  const NodeIndex idx = inst.find_node(id);
  if (idx < 0) {
    throw Error(ErrorCode::kValidationError, "UNKNOWN_NODE: " + path + " references '" + id + "'",
                {"UNKNOWN_NODE: " + path + " references '" + id + "'"});
  }
  return idx;
}

}  // namespace io_detail

inline nlohmann::json instance_to_json(const Instance& inst) {
  using io_detail::json;
  using io_detail::number;
  json doc = json::object();
  doc["nodes"] = inst.nodes;

  json edges = json::array();
  for (const auto& e : inst.transport_edges) {
    edges.push_back({{"id", e.id}, {"a", inst.nodes.at(e.a)}, {"b", inst.nodes.at(e.b)}});
  }
  doc["transport_edges"] = std::move(edges);

  json demands = json::array();
  for (const auto& d : inst.demands) {
    demands.push_back({{"src", inst.nodes.at(d.src)}, {"dst", inst.nodes.at(d.dst)}, {"rate", number(d.rate)}});
  }
  doc["demands"] = std::move(demands);

  json lsr = json::object();
  for (std::size_t i = 0; i < inst.nodes.size() && i < inst.cost.lsr_cost.size(); ++i) {
    lsr[inst.nodes[i]] = inst.cost.lsr_cost[i];
  }
  json channel = json::object();
  for (std::size_t e = 0; e < inst.transport_edges.size() && e < inst.cost.channel_cost.size(); ++e) {
    channel[inst.transport_edges[e].id] = inst.cost.channel_cost[e];
  }
  doc["cost"] = {{"lsr_cost", std::move(lsr)},
                 {"channel_cost", std::move(channel)},
                 {"channel_capacity", number(inst.cost.channel_capacity)}};
  doc["meta"] = {{"node_count", inst.meta.node_count}, {"variant", inst.meta.variant}, {"seed", inst.meta.seed}};
  return doc;
}

/// Decodes and validates. Throws PARSE_ERROR for shape problems (with the
/// offending field path) and VALIDATION_ERROR for invariant violations.
inline Instance instance_from_json(const nlohmann::json& doc) {
  using namespace io_detail;
  Instance inst;
  const auto& nodes = as_array(member(doc, "nodes", "$"), "$.nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    inst.nodes.push_back(as_string(nodes[i], "$.nodes[" + std::to_string(i) + "]"));
  }

  const auto& edges = as_array(member(doc, "transport_edges", "$"), "$.transport_edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "$.transport_edges[" + std::to_string(i) + "]";
    inst.transport_edges.push_back({as_string(member(edges[i], "id", path), path + ".id"),
                                    node_ref(inst, member(edges[i], "a", path), path + ".a"),
                                    node_ref(inst, member(edges[i], "b", path), path + ".b")});
  }

  const auto& demands = as_array(member(doc, "demands", "$"), "$.demands");
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const std::string path = "$.demands[" + std::to_string(i) + "]";
    inst.demands.push_back({node_ref(inst, member(demands[i], "src", path), path + ".src"),
                            node_ref(inst, member(demands[i], "dst", path), path + ".dst"),
                            as_number(member(demands[i], "rate", path), path + ".rate")});
  }

  const auto& cost = member(doc, "cost", "$");
  const auto& lsr = member(cost, "lsr_cost", "$.cost");
  if (!lsr.is_object()) field_error("$.cost.lsr_cost", "expected object");
  std::vector<std::string> missing;
  for (const auto& node : inst.nodes) {
    const auto it = lsr.find(node);
    if (it == lsr.end()) {
      missing.push_back("MISSING_COST: lsr_cost has no entry for node '" + node + "'");
      inst.cost.lsr_cost.push_back(0);
    } else {
      inst.cost.lsr_cost.push_back(as_integer(*it, "$.cost.lsr_cost." + node));
    }
  }
  const auto& channel = member(cost, "channel_cost", "$.cost");
  if (!channel.is_object()) field_error("$.cost.channel_cost", "expected object");
  for (const auto& edge : inst.transport_edges) {
    const auto it = channel.find(edge.id);
    if (it == channel.end()) {
      missing.push_back("MISSING_COST: channel_cost has no entry for edge '" + edge.id + "'");
      inst.cost.channel_cost.push_back(0);
    } else {
      inst.cost.channel_cost.push_back(as_integer(*it, "$.cost.channel_cost." + edge.id));
    }
  }
  inst.cost.channel_capacity = as_number(member(cost, "channel_capacity", "$.cost"), "$.cost.channel_capacity");

  const auto& meta = member(doc, "meta", "$");
  inst.meta.node_count = as_integer(member(meta, "node_count", "$.meta"), "$.meta.node_count");
  inst.meta.variant = as_string(member(meta, "variant", "$.meta"), "$.meta.variant");
  const auto& seed = member(meta, "seed", "$.meta");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    field_error("$.meta.seed", "expected non-negative integer");
  }
  inst.meta.seed = seed.get<std::uint64_t>();

  auto violations = instance_violations(inst);
  violations.insert(violations.begin(), missing.begin(), missing.end());
  if (!violations.empty()) {
    const std::string first = violations.front();
    throw Error(ErrorCode::kValidationError, first, std::move(violations));
  }
  return inst;
}

inline std::string instance_to_string(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline Instance instance_from_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what(), {e.what()});
  }
  return instance_from_json(doc);
}

inline Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_string(buffer.str());
}

inline void write_instance(const Instance& inst, const std::filesystem::path& path) {
  const std::string text = instance_to_string(inst);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace mlsynth
