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

// Report emission (csv, json, pretty) and solution serialization.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mlsynth/error.hpp"
#include "mlsynth/harness.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/solution.hpp"

namespace mlsynth {

enum class ReportFormat { kCsv, kJson, kPretty };

inline constexpr std::string_view kCsvHeader =
    "node_count,variant,seed,baseline_cost,multilayer_cost,savings_pct,baseline_ms,multilayer_ms";

inline ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "pretty") return ReportFormat::kPretty;
  throw Error(ErrorCode::kParamsInfeasible, "unknown report format '" + std::string(name) + "'");
}

inline std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

namespace report_detail {

inline nlohmann::json summary_json(const ComparisonTable& table) {
  if (!table.summary) return {{"status", "NO_DATA"}};
  const SavingsSummary& s = *table.summary;
  nlohmann::json per_nodes = nlohmann::json::object();
  for (const auto& [k, v] : s.per_node_count_mean) per_nodes[std::to_string(k)] = v;
  nlohmann::json per_variant = nlohmann::json::object();
  for (const auto& [k, v] : s.per_variant_mean) per_variant[k] = v;
  return {{"status", "OK"},
          {"rows", s.rows},
          {"mean_savings_pct", s.mean},
          {"min_savings_pct", s.min},
          {"max_savings_pct", s.max},
          {"in_target_band", s.in_target_band},
          {"per_node_count_mean", per_nodes},
          {"per_variant_mean", per_variant}};
}

inline void emit_csv(const ComparisonTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& row : table.rows) {
    out << row.node_count << ',' << row.variant << ',' << row.seed << ',';
    if (row.ok()) {
      out << row.baseline_cost << ',' << row.multilayer_cost << ',' << fixed(row.savings_pct, 4);
    } else {
      out << ",,";
    }
    out << ',' << (row.baseline_ms ? fixed(*row.baseline_ms, 3) : "") << ','
        << (row.multilayer_ms ? fixed(*row.multilayer_ms, 3) : "") << '\n';
  }
}

inline void emit_json(const ComparisonTable& table, std::ostream& out) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = {{"node_count", row.node_count}, {"variant", row.variant}, {"seed", row.seed}};
    if (row.ok()) {
      r["baseline_cost"] = row.baseline_cost;
      r["multilayer_cost"] = row.multilayer_cost;
      r["savings_pct"] = row.savings_pct;
    } else {
      r["error"] = row.error;
    }
    r["baseline_ms"] = row.baseline_ms ? nlohmann::json(*row.baseline_ms) : nlohmann::json(nullptr);
    r["multilayer_ms"] = row.multilayer_ms ? nlohmann::json(*row.multilayer_ms) : nlohmann::json(nullptr);
    rows.push_back(std::move(r));
  }
  out << nlohmann::json{{"rows", rows}, {"summary", summary_json(table)}}.dump(2) << '\n';
}

// Node counts down, variants across, mean cost over seeds in each cell; one
// grid per method plus a savings column.
inline void emit_pretty(const ComparisonTable& table, std::ostream& out) {
  std::set<int> node_counts;
  std::set<std::string> variants;
  std::map<std::pair<int, std::string>, std::pair<double, double>> sums;
  std::map<std::pair<int, std::string>, int> counts;
  for (const auto& row : table.rows) {
    if (!row.ok()) continue;
    node_counts.insert(row.node_count);
    variants.insert(row.variant);
    auto& cell = sums[{row.node_count, row.variant}];
    cell.first += static_cast<double>(row.baseline_cost);
    cell.second += static_cast<double>(row.multilayer_cost);
    ++counts[{row.node_count, row.variant}];
  }
  const auto pad = [](const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
  };
  for (const bool multilayer : {true, false}) {
    out << (multilayer ? "Multilayer design cost" : "Full-LSR baseline cost") << " (mean over seeds)\n";
    out << pad("nodes", 6) << " |";
    for (const auto& v : variants) out << pad(v, 9);
    out << " |" << pad("savings %", 11) << '\n';
    out << std::string(6 + 2 + 9 * variants.size() + 2 + 11, '-') << '\n';
    for (const int n : node_counts) {
      out << pad(std::to_string(n), 6) << " |";
      for (const auto& v : variants) {
        const auto it = sums.find({n, v});
        if (it == sums.end()) {
          out << pad("-", 9);
          continue;
        }
        const double c = multilayer ? it->second.second : it->second.first;
        out << pad(fixed(c / counts.at({n, v}), 0), 9);
      }
      std::string savings = "-";
      if (table.summary && table.summary->per_node_count_mean.count(n)) {
        savings = fixed(table.summary->per_node_count_mean.at(n), 2);
      }
      out << " |" << pad(savings, 11) << '\n';
    }
    out << '\n';
  }
  if (table.summary) {
    const auto& s = *table.summary;
    out << "mean savings " << fixed(s.mean, 2) << "% (min " << fixed(s.min, 2) << "%, max " << fixed(s.max, 2)
        << "%) over " << s.rows << " rows; " << (s.in_target_band ? "inside" : "outside") << " the 10-16% band\n";
  } else {
    out << "NO_DATA\n";
  }
}

}  // namespace report_detail

/// Writes the table. A NO_DATA table produces a header-only csv and a
/// warning on `warnings`.
inline void emit_report(const ComparisonTable& table, ReportFormat format, std::ostream& out,
                        std::ostream* warnings = nullptr) {
  if (!table.summary && warnings != nullptr) *warnings << "warning: NO_DATA (no successful rows)\n";
  switch (format) {
    case ReportFormat::kCsv: report_detail::emit_csv(table, out); break;
    case ReportFormat::kJson: report_detail::emit_json(table, out); break;
    case ReportFormat::kPretty: report_detail::emit_pretty(table, out); break;
  }
}

inline std::string report_to_string(const ComparisonTable& table, ReportFormat format) {
  std::ostringstream out;
  emit_report(table, format, out);
  return out.str();
}

inline void write_report(const ComparisonTable& table, ReportFormat format, const std::filesystem::path& path,
                         std::ostream* warnings = nullptr) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  emit_report(table, format, out, warnings);
  if (!out.flush()) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

inline nlohmann::json solution_to_json(const Instance& inst, const Solution& sol) {
  nlohmann::json lsrs = nlohmann::json::array();
  for (const NodeIndex v : sol.lsr_nodes) lsrs.push_back(inst.nodes.at(static_cast<std::size_t>(v)));
  nlohmann::json links = nlohmann::json::array();
  for (const auto& link : sol.logical_links) {
    nlohmann::json realization = nlohmann::json::array();
    for (const auto e : link.realization) realization.push_back(inst.transport_edges.at(static_cast<std::size_t>(e)).id);
    const auto load = sol.flow.link_load.find(link.id);
    links.push_back({{"id", link.id},
                     {"a", inst.nodes.at(static_cast<std::size_t>(link.a))},
                     {"b", inst.nodes.at(static_cast<std::size_t>(link.b))},
                     {"realization", realization},
                     {"channels", link.channels},
                     {"load", load == sol.flow.link_load.end() ? 0.0 : load->second}});
  }
  nlohmann::json routes = nlohmann::json::array();
  for (const auto& [d, ids] : sol.flow.routes) routes.push_back({{"demand", d}, {"links", ids}});
  return {{"lsr_nodes", lsrs},
          {"logical_links", links},
          {"routes", routes},
          {"cost",
           {{"lsr_total", sol.cost.lsr_total},
            {"channel_total", sol.cost.channel_total},
            {"grand_total", sol.cost.grand_total}}}};
}

}  // namespace mlsynth
