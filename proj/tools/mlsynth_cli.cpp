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

// mlsynth: generate instances, solve them, and run baseline-vs-multilayer
// comparison suites.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible or invalid input,
// 3 I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mlsynth/mlsynth.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

int exit_code_for(mlsynth::ErrorCode code) {
  return code == mlsynth::ErrorCode::kIoError ? kExitIo : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MPLS overlay synthesis on a multilayer graph model"};
  app.require_subcommand(1);

  int gen_nodes = 20;
  int gen_variant = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random instance from a variant preset");
  gen->add_option("--nodes", gen_nodes, "Node count (>= 3)")->required();
  gen->add_option("--variant", gen_variant, "Variant preset 1..8")->required();
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output instance file")->required();

  std::string solve_in;
  std::string solver = "multilayer";
  std::uint64_t solve_seed = 1;
  bool solve_json = false;
  mlsynth::BuilderParams builder;
  mlsynth::SearchParams search;
  auto* solve = app.add_subcommand("solve", "Solve one instance file");
  solve->add_option("--in", solve_in, "Instance file")->required();
  solve->add_option("--solver", solver, "multilayer | baseline | exact")
      ->check(CLI::IsMember({"multilayer", "baseline", "exact"}));
  solve->add_option("--seed", solve_seed, "Search seed");
  solve->add_flag("--json", solve_json, "Print the full solution as JSON");
  solve->add_option("--k-paths", builder.k_paths, "Candidate realizations per LSR pair")->check(CLI::PositiveNumber);
  solve->add_option("--restarts", search.restarts, "Local-search restarts")->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", search.max_iters, "Accepted-move limit per restart")->check(CLI::PositiveNumber);

  std::string grid = "20:50:5";
  int variant_count = mlsynth::kVariantCount;
  int seed_count = 3;
  std::string compare_out;
  std::string format = "csv";
  mlsynth::SuiteConfig suite;
  auto* compare = app.add_subcommand("compare", "Run the baseline-vs-multilayer comparison suite");
  compare->add_option("--grid", grid, "Node counts as lo:hi:step");
  compare->add_option("--variants", variant_count, "Use presets 1..N")->check(CLI::Range(0, mlsynth::kVariantCount));
  compare->add_option("--seeds", seed_count, "Use seeds 1..N")->check(CLI::NonNegativeNumber);
  compare->add_option("--out", compare_out, "Report file (stdout when omitted)");
  compare->add_option("--format", format, "csv | json | pretty")->check(CLI::IsMember({"csv", "json", "pretty"}));
  compare->add_option("--k-paths", suite.builder.k_paths, "Candidate realizations per LSR pair")
      ->check(CLI::PositiveNumber);
  compare->add_option("--restarts", suite.search.restarts, "Local-search restarts")->check(CLI::PositiveNumber);
  compare->add_option("--max-iters", suite.search.max_iters, "Accepted-move limit per restart")
      ->check(CLI::PositiveNumber);
  compare->add_option("--threads", suite.threads, "Worker threads (0 = auto, capped by MLSYNTH_THREADS)");
  compare->add_flag("--timing", suite.measure_time, "Fill the runtime columns (output is then not byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const auto inst =
          mlsynth::generate_instance(gen_nodes, mlsynth::variant_preset(gen_variant, gen_nodes), gen_seed);
      mlsynth::write_instance(inst, gen_out);
      return 0;
    }

    if (*solve) {
      const auto inst = mlsynth::read_instance(solve_in);
      search.seed = solve_seed;
      mlsynth::Solution sol;
      if (solver == "baseline") {
        sol = mlsynth::solve_full_lsr_baseline(inst);
      } else if (solver == "exact") {
        sol = mlsynth::solve_exact(inst);
      } else {
        sol = mlsynth::solve_multilayer(inst, builder, search);
      }
      if (solve_json) {
        auto doc = mlsynth::solution_to_json(inst, sol);
        doc["solver"] = solver;
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << solver << ": lsr " << sol.cost.lsr_total << " + channels " << sol.cost.channel_total << " = "
                  << sol.cost.grand_total << " (" << sol.lsr_nodes.size() << " LSRs, " << sol.logical_links.size()
                  << " logical links)\n";
      }
      return 0;
    }

    suite.node_counts = mlsynth::parse_grid(grid);
    for (int v = 1; v <= variant_count; ++v) suite.variants.push_back(v);
    for (int s = 1; s <= seed_count; ++s) suite.seeds.push_back(static_cast<std::uint64_t>(s));
    const auto report_format = mlsynth::parse_report_format(format);
    const auto table = mlsynth::run_comparison(suite);
    for (const auto& row : table.rows) {
      if (!row.ok()) {
        std::cerr << "row " << row.node_count << '/' << row.variant << '/' << row.seed << " failed: " << row.error
                  << '\n';
      }
    }
    if (compare_out.empty()) {
      mlsynth::emit_report(table, report_format, std::cout, &std::cerr);
    } else {
      mlsynth::write_report(table, report_format, compare_out, &std::cerr);
    }
    if (table.summary && report_format != mlsynth::ReportFormat::kPretty) {
      std::cerr << "mean savings " << mlsynth::fixed(table.summary->mean, 2) << "% over " << table.summary->rows
                << " rows (" << (table.summary->in_target_band ? "inside" : "outside") << " the 10-16% band)\n";
    }
    return 0;
  } catch (const mlsynth::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (std::size_t i = 1; i < e.details().size(); ++i) std::cerr << "  " << e.details()[i] << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
