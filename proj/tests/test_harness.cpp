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

#include <cmath>
#include <sstream>

#include "mlsynth/error.hpp"
#include "mlsynth/harness.hpp"
#include "mlsynth/report.hpp"
#include "test_support.hpp"

namespace mlsynth {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

ComparisonRow row_with(double savings) {
  ComparisonRow r;
  r.savings_pct = savings;
  r.variant = "1";
  return r;
}

// One seed of the default grid; shared by several tests.
const ComparisonTable& grid_table() {
  static const ComparisonTable table = [] {
    SuiteConfig config = default_suite();
    config.seeds = {1};
    return run_comparison(config);
  }();
  return table;
}

TEST(Summarize, Arithmetic) {
  const auto s = summarize_savings({row_with(12), row_with(14)});
  EXPECT_DOUBLE_EQ(s.mean, 13);
  EXPECT_DOUBLE_EQ(s.min, 12);
  EXPECT_DOUBLE_EQ(s.max, 14);
  EXPECT_TRUE(s.in_target_band);

  const auto zero = summarize_savings({row_with(0), row_with(0)});
  EXPECT_DOUBLE_EQ(zero.mean, 0);
  EXPECT_FALSE(zero.in_target_band);
}

TEST(Summarize, EmptyIsNoData) {
  try {
    summarize_savings({});
    FAIL() << "expected NO_DATA";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoData);
  }
}

TEST(Summarize, SkipsFailedRows) {
  ComparisonRow failed = row_with(99);
  failed.error = "boom";
  const auto s = summarize_savings({row_with(10), failed});
  EXPECT_EQ(s.rows, 1u);
  EXPECT_DOUBLE_EQ(s.mean, 10);
}

TEST(CompareInstance, TriangleSavesTwentyPercent) {
  const auto row = compare_instance(testing::triangle(), BuilderParams{}, SearchParams{}, false, true);
  ASSERT_TRUE(row.ok()) << row.error;
  EXPECT_EQ(row.baseline_cost, 25);
  EXPECT_EQ(row.multilayer_cost, 20);
  EXPECT_DOUBLE_EQ(row.savings_pct, 20.0);
  EXPECT_TRUE(row.violations.empty());
  EXPECT_FALSE(row.baseline_ms.has_value());
}

TEST(CompareInstance, TimingOnlyWhenAsked) {
  const auto row = compare_instance(testing::triangle(), BuilderParams{}, SearchParams{}, true, false);
  EXPECT_TRUE(row.baseline_ms.has_value());
  EXPECT_TRUE(row.multilayer_ms.has_value());
}

TEST(RunComparison, EmptySuite) {
  const auto table = run_comparison(SuiteConfig{});
  EXPECT_TRUE(table.rows.empty());
  EXPECT_FALSE(table.summary.has_value());
  std::ostringstream out;
  std::ostringstream warnings;
  emit_report(table, ReportFormat::kCsv, out, &warnings);
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
  EXPECT_NE(warnings.str().find("NO_DATA"), std::string::npos);
  EXPECT_NE(report_to_string(table, ReportFormat::kJson).find("NO_DATA"), std::string::npos);
}

TEST(RunComparison, GridHas56OrderedRows) {
  const auto& table = grid_table();
  ASSERT_EQ(table.rows.size(), 56u);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& a = table.rows[i - 1];
    const auto& b = table.rows[i];
    EXPECT_LT(std::tuple(a.node_count, std::stoi(a.variant), a.seed), std::tuple(b.node_count, std::stoi(b.variant), b.seed));
  }
  for (const auto& row : table.rows) {
    EXPECT_TRUE(row.ok()) << row.error;
    EXPECT_GE(row.savings_pct, 0.0);
    EXPECT_FALSE(row.iteration_limit_hit);
  }
}

TEST(Report, CsvShapeAndColumns) {
  const std::string csv = report_to_string(grid_table(), ReportFormat::kCsv);
  const auto lines = split(csv, '\n');
  ASSERT_EQ(lines.size(), 57u);
  EXPECT_EQ(lines[0], "node_count,variant,seed,baseline_cost,multilayer_cost,savings_pct,baseline_ms,multilayer_ms");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 7) << lines[i];
  }
}

TEST(Report, SummaryRecomputableFromCsv) {
  const auto& table = grid_table();
  const auto lines = split(report_to_string(table, ReportFormat::kCsv), '\n');
  double sum = 0;
  double lo = 1e9;
  double hi = -1e9;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    const double base = std::stod(cells[3]);
    const double ml = std::stod(cells[4]);
    const double savings = std::stod(cells[5]);
    EXPECT_NEAR(savings, 100.0 * (base - ml) / base, 5e-5);
    sum += savings;
    lo = std::min(lo, savings);
    hi = std::max(hi, savings);
  }
  const double n = static_cast<double>(lines.size() - 1);
  EXPECT_NEAR(table.summary->mean, sum / n, 1e-4);
  EXPECT_NEAR(table.summary->min, lo, 1e-4);
  EXPECT_NEAR(table.summary->max, hi, 1e-4);
}

TEST(Report, ByteIdenticalAcrossRunsAndThreadCounts) {
  SuiteConfig config;
  config.node_counts = {20, 25};
  config.variants = {1, 4, 7};
  config.seeds = {1, 2};
  config.threads = 1;
  const std::string one = report_to_string(run_comparison(config), ReportFormat::kCsv);
  config.threads = 4;
  const std::string four = report_to_string(run_comparison(config), ReportFormat::kCsv);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, report_to_string(run_comparison(config), ReportFormat::kCsv));
}

TEST(Report, JsonAndPrettyFormats) {
  const auto& table = grid_table();
  const auto doc = nlohmann::json::parse(report_to_string(table, ReportFormat::kJson));
  EXPECT_EQ(doc["rows"].size(), 56u);
  EXPECT_EQ(doc["summary"]["status"], "OK");
  EXPECT_NEAR(doc["summary"]["mean_savings_pct"].get<double>(), table.summary->mean, 1e-9);

  const std::string pretty = report_to_string(table, ReportFormat::kPretty);
  EXPECT_NE(pretty.find("Multilayer design cost"), std::string::npos);
  EXPECT_NE(pretty.find("Full-LSR baseline cost"), std::string::npos);
  EXPECT_NE(pretty.find("mean savings"), std::string::npos);
  EXPECT_EQ(parse_report_format("pretty"), ReportFormat::kPretty);
  EXPECT_THROW(parse_report_format("xml"), Error);
}

TEST(Report, WriteFailureIsIoError) {
  try {
    write_report(grid_table(), ReportFormat::kCsv, "/nonexistent/dir/report.csv");
    FAIL() << "expected IO_ERROR";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(ParseGrid, Forms) {
  EXPECT_EQ(parse_grid("20:50:5"), (std::vector<int>{20, 25, 30, 35, 40, 45, 50}));
  EXPECT_EQ(parse_grid("7"), (std::vector<int>{7}));
  EXPECT_EQ(parse_grid("3:5"), (std::vector<int>{3, 4, 5}));
  EXPECT_THROW(parse_grid("20:10:5"), Error);
  EXPECT_THROW(parse_grid("a:b"), Error);
  EXPECT_THROW(parse_grid("1:5:0"), Error);
}

TEST(WorkerCount, EnvironmentCap) {
  ::setenv("MLSYNTH_THREADS", "2", 1);
  EXPECT_EQ(worker_count(8), 2);
  EXPECT_EQ(worker_count(1), 1);
  ::unsetenv("MLSYNTH_THREADS");
  EXPECT_EQ(worker_count(3), 3);
}

}  // namespace
}  // namespace mlsynth
