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

// Baseline-vs-multilayer comparison suites and savings statistics.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mlsynth/builder.hpp"
#include "mlsynth/error.hpp"
#include "mlsynth/instance.hpp"
#include "mlsynth/mlg_model.hpp"
#include "mlsynth/optimizer.hpp"

namespace mlsynth {

// Reference band for mean savings over the full-LSR baseline, in percent.
inline constexpr double kTargetBandLow = 10.0;
inline constexpr double kTargetBandHigh = 16.0;

struct SuiteConfig {
  std::vector<int> node_counts;
  std::vector<int> variants;  // preset numbers, 1..kVariantCount
  std::vector<std::uint64_t> seeds;
  BuilderParams builder;
  SearchParams search;  // search.seed is replaced by the row seed
  int threads = 0;      // 0: MLSYNTH_THREADS, else hardware concurrency
  bool measure_time = false;
  bool verify = false;  // validate graphs and solutions on every row
};

/// Default suite: node counts 20..50 step 5, eight presets, three seeds.
inline SuiteConfig default_suite() {
  SuiteConfig config;
  for (int n = 20; n <= 50; n += 5) config.node_counts.push_back(n);
  for (int v = 1; v <= kVariantCount; ++v) config.variants.push_back(v);
  config.seeds = {1, 2, 3};
  return config;
}

struct ComparisonRow {
  int node_count = 0;
  std::string variant;
  std::uint64_t seed = 0;
  Cost baseline_cost = 0;
  Cost multilayer_cost = 0;
  double savings_pct = 0;
  std::optional<double> baseline_ms;
  std::optional<double> multilayer_ms;
  std::string error;                    // empty when both solvers succeeded
  std::vector<std::string> violations;  // filled in verify mode
  std::int64_t search_moves = 0;
  bool iteration_limit_hit = false;

  bool ok() const { return error.empty(); }
};

struct SavingsSummary {
  std::size_t rows = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  bool in_target_band = false;
  std::map<int, double> per_node_count_mean;
  std::map<std::string, double> per_variant_mean;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::optional<SavingsSummary> summary;  // nullopt: NO_DATA
};

inline double savings_percent(Cost baseline, Cost multilayer) {
  if (baseline <= 0) return 0.0;
  return 100.0 * static_cast<double>(baseline - multilayer) / static_cast<double>(baseline);
}

/// Statistics over the savings of successful rows. Throws NO_DATA when there
/// are none.
inline SavingsSummary summarize_savings(const std::vector<ComparisonRow>& rows) {
  SavingsSummary s;
  std::map<int, std::pair<double, int>> by_nodes;
  std::map<std::string, std::pair<double, int>> by_variant;
  double total = 0;
  for (const auto& row : rows) {
    if (!row.ok()) continue;
    if (s.rows == 0) {
      s.min = s.max = row.savings_pct;
    } else {
      s.min = std::min(s.min, row.savings_pct);
      s.max = std::max(s.max, row.savings_pct);
    }
    ++s.rows;
    total += row.savings_pct;
    auto& n = by_nodes[row.node_count];
    n.first += row.savings_pct;
    ++n.second;
    auto& v = by_variant[row.variant];
    v.first += row.savings_pct;
    ++v.second;
  }
  if (s.rows == 0) throw Error(ErrorCode::kNoData, "no successful rows to summarize");
  s.mean = total / static_cast<double>(s.rows);
  s.in_target_band = s.mean >= kTargetBandLow && s.mean <= kTargetBandHigh;
  for (const auto& [k, acc] : by_nodes) s.per_node_count_mean[k] = acc.first / acc.second;
  for (const auto& [k, acc] : by_variant) s.per_variant_mean[k] = acc.first / acc.second;
  return s;
}

/// Runs both solvers on one instance. Solver failures land in row.error.
inline ComparisonRow compare_instance(const Instance& inst, const BuilderParams& builder, const SearchParams& search,
                                      bool measure_time, bool verify) {
  using Clock = std::chrono::steady_clock;
  const auto ms_since = [](Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };
  ComparisonRow row;
  row.node_count = static_cast<int>(inst.node_count());
  row.variant = inst.meta.variant;
  row.seed = inst.meta.seed;
  try {
    auto t0 = Clock::now();
    const Solution baseline = solve_full_lsr_baseline(inst);
    if (measure_time) row.baseline_ms = ms_since(t0);

    t0 = Clock::now();
    const MultilayerGraph mlg = build_redundant_mlg(inst, builder);
    const MultilayerResult ml = run_multilayer_search(inst, mlg, search, &baseline);
    if (measure_time) row.multilayer_ms = ms_since(t0);

    row.baseline_cost = baseline.cost.grand_total;
    row.multilayer_cost = ml.solution.cost.grand_total;
    row.savings_pct = savings_percent(row.baseline_cost, row.multilayer_cost);
    row.search_moves = ml.stats.moves;
    row.iteration_limit_hit = ml.stats.hit_iteration_limit;

    if (verify) {
      for (const auto& v : validate(mlg)) row.violations.push_back("mlg " + v.code + " " + v.subject);
      if (auto v = check_feasibility(inst, baseline)) row.violations.push_back("baseline " + *v);
      if (auto v = check_feasibility(inst, ml.solution)) row.violations.push_back("multilayer " + *v);
      if (row.multilayer_cost > row.baseline_cost) row.violations.push_back("NON_INFERIORITY");
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

/// Worker count: `requested` if positive, else hardware concurrency; capped
/// by the MLSYNTH_THREADS environment variable.
inline int worker_count(int requested) {
  int workers = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("MLSYNTH_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) workers = std::min(workers, cap);
  }
  return std::max(1, workers);
}

/// One row per (node_count, variant, seed), in that order whatever the
/// worker count.
inline ComparisonTable run_comparison(const SuiteConfig& config) {
  struct Job {
    int nodes;
    int variant;
    std::uint64_t seed;
  };
  std::vector<int> node_counts = config.node_counts;
  std::vector<int> variants = config.variants;
  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(node_counts.begin(), node_counts.end());
  std::sort(variants.begin(), variants.end());
  std::sort(seeds.begin(), seeds.end());
  std::vector<Job> jobs;
  for (const int n : node_counts) {
    for (const int v : variants) {
      for (const auto s : seeds) jobs.push_back({n, v, s});
    }
  }

  ComparisonTable table;
  table.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        const Instance inst = generate_instance(job.nodes, variant_preset(job.variant, job.nodes), job.seed);
        SearchParams search = config.search;
        search.seed = job.seed;
        table.rows[i] = compare_instance(inst, config.builder, search, config.measure_time, config.verify);
      } catch (const std::exception& e) {
        ComparisonRow& row = table.rows[i];
        row.node_count = job.nodes;
        row.variant = std::to_string(job.variant);
        row.seed = job.seed;
        row.error = e.what();
      }
    }
  };
  const int workers = std::min<int>(worker_count(config.threads), static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  try {
    table.summary = summarize_savings(table.rows);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoData) throw;
  }
  return table;
}

/// Parses "lo:hi:step" (or a single "n") into node counts.
inline std::vector<int> parse_grid(const std::string& spec) {
  std::vector<long> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    const std::string token = spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    char* end = nullptr;
    const long value = std::strtol(token.c_str(), &end, 10);
    if (token.empty() || end == nullptr || *end != '\0') {
      throw Error(ErrorCode::kParamsInfeasible, "bad grid '" + spec + "', expected lo:hi:step");
    }
    parts.push_back(value);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) parts = {parts[0], parts[0], 1};
  if (parts.size() == 2) parts.push_back(1);
  if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) {
    throw Error(ErrorCode::kParamsInfeasible, "bad grid '" + spec + "', expected lo:hi:step");
  }
  std::vector<int> out;
  for (long n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(static_cast<int>(n));
  return out;
}

}  // namespace mlsynth
