// polyident: identifiability checks for convex polytopes.
//
//   polyident check <file> [--brute-force] [--json-out report.json]
//   polyident vertices <hrep.json> [-o out.json] [--check-bounded]
//   polyident gen --dims 3..6 --count 500 --seed 7 --out-dir data/
//   polyident stats data/ [-o summary.json]
//   polyident bench --min-m 6 --max-m 11 --trials 5 --brute-cap 11 -o bench.csv

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polyident/commands.hpp"
#include "polyident/error.hpp"

namespace {

using namespace polyident;

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--seed", common.seed, "Base seed for every pseudorandom draw");
  sub->add_option("--vertex-cap", common.vertex_cap, "Skip generated polytopes with more vertices");
  sub->add_option("--brute-cap", common.brute_cap, "Largest vertex count the brute-force method accepts");
  sub->add_option("--json-out", common.json_out, "Write the JSON report/summary to this path");
  sub->add_flag("--quiet", common.quiet, "Suppress human-readable output");
}

// "3..6" or a single "4".
bool parse_range(const std::string& text, std::size_t& lo, std::size_t& hi) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoul(text);
    } else {
      lo = std::stoul(text.substr(0, dots));
      hi = std::stoul(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo <= hi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide polytope identifiability via linear automorphism generators"};
  app.require_subcommand(1);
  CommonOptions common;

  CheckCommand check;
  auto* check_cmd = app.add_subcommand("check", "Decide identifiability of a polytope (V or H JSON)");
  check_cmd->add_option("input", check.input, "Polytope or H-representation JSON")->required();
  check_cmd->add_flag("--brute-force", check.brute_force, "Sweep every vertex permutation instead");
  add_common(check_cmd, common);

  VerticesCommand vertices;
  auto* vertices_cmd = app.add_subcommand("vertices", "Convert an H-representation into its vertex list");
  vertices_cmd->add_option("input", vertices.input, "H-representation JSON")->required();
  vertices_cmd->add_option("-o,--out", vertices.output, "Output polytope JSON (stdout when omitted)");
  vertices_cmd->add_flag("--check-bounded", vertices.check_bounded, "Reject unbounded inputs");
  add_common(vertices_cmd, common);

  GenCommand gen;
  std::string dims = "3..6";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random polytope dataset");
  gen_cmd->add_option("--dims", dims, "Dimension range, e.g. 3..6");
  gen_cmd->add_option("--count", gen.count, "Number of samples to draw");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Directory receiving polytope_NNNNN.json")->required();
  add_common(gen_cmd, common);

  StatsCommand stats;
  auto* stats_cmd = app.add_subcommand("stats", "Identifiability statistics over a dataset directory");
  stats_cmd->add_option("in_dir", stats.in_dir, "Directory of polytope JSON files")->required();
  stats_cmd->add_option("-o,--out", stats.output, "Summary JSON path (stdout when omitted)");
  add_common(stats_cmd, common);

  BenchCommand bench;
  std::string bench_dims = "3..6";
  auto* bench_cmd = app.add_subcommand("bench", "Time generator-based vs brute-force decisions");
  bench_cmd->add_option("--min-m", bench.min_m, "Smallest vertex count");
  bench_cmd->add_option("--max-m", bench.max_m, "Largest vertex count");
  bench_cmd->add_option("--trials", bench.trials, "Polytopes per vertex count");
  bench_cmd->add_option("--dims", bench_dims, "Dimension range sampled from");
  bench_cmd->add_option("--max-retries", bench.max_retries, "Draws allowed per target vertex count");
  bench_cmd->add_option("--repeats", bench.repeats, "Timed calls per row; the fastest is reported")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("-o,--out", bench.output, "CSV path (stdout when omitted)");
  add_common(bench_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (auto budget = search_budget_from_env()) common.search_budget = *budget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  if (*check_cmd) return cmd_check(check, common, std::cout, std::cerr);
  if (*vertices_cmd) return cmd_vertices(vertices, common, std::cout, std::cerr);
  if (*gen_cmd) {
    if (!parse_range(dims, gen.min_dim, gen.max_dim)) {
      std::cerr << "error: --dims expects LO..HI\n";
      return kExitError;
    }
    if (gen.count == 0) {
      std::cerr << "error: --count must be at least 1\n";
      return kExitError;
    }
    return cmd_gen(gen, common, std::cout, std::cerr);
  }
  if (*stats_cmd) return cmd_stats(stats, common, std::cout, std::cerr);
  if (*bench_cmd) {
    if (!parse_range(bench_dims, bench.min_dim, bench.max_dim)) {
      std::cerr << "error: --dims expects LO..HI\n";
      return kExitError;
    }
    return cmd_bench(bench, common, std::cout, std::cerr);
  }
  return kExitError;
}
