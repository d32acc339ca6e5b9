#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyident/identifiability.hpp"
#include "polyident/json_io.hpp"

namespace polyident {

namespace fs = std::filesystem;

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitNotIdentifiable = 1, kExitError = 2 };

struct CommonOptions {
  std::uint64_t seed = 0;
  std::size_t vertex_cap = 30;
  std::size_t brute_cap = 10;
  std::optional<fs::path> json_out;
  bool quiet = false;
  std::uint64_t search_budget = 1'000'000;
};

/// Reads POLYIDENT_SEARCH_BUDGET if set; throws Error(Parse) on junk.
std::optional<std::uint64_t> search_budget_from_env();

struct CheckCommand {
  fs::path input;
  bool brute_force = false;
};
int cmd_check(const CheckCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err);

struct VerticesCommand {
  fs::path input;
  std::optional<fs::path> output;  // stdout when absent
  bool check_bounded = false;
};
int cmd_vertices(const VerticesCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err);

struct GenCommand {
  std::size_t min_dim = 3;
  std::size_t max_dim = 6;
  std::size_t count = 500;
  fs::path out_dir;
};

struct GenSample {
  std::size_t index = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::optional<json> polytope;  // absent when skipped
  std::string skip_reason;       // "vertex_cap", "degenerate" or "error"
  std::string message;
};

/// Samples are independent and seeded by (seed, index), so the result does
/// not depend on the number of OpenMP threads.
std::vector<GenSample> generate_dataset(const GenCommand& cmd, const CommonOptions& common);
json gen_summary(const std::vector<GenSample>& samples, const GenCommand& cmd, const CommonOptions& common);
int cmd_gen(const GenCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err);

struct DimTally {
  std::size_t total = 0;
  std::size_t identifiable = 0;
};

struct DatasetSummary {
  std::size_t total = 0;  // polytopes successfully checked
  std::size_t identifiable = 0;
  std::size_t skipped = 0;
  std::map<std::size_t, DimTally> per_dim;
  std::optional<double> fraction() const;
};

struct StatsCommand {
  fs::path in_dir;
  std::optional<fs::path> output;  // stdout when absent
};
json stats_json(const fs::path& in_dir, const CommonOptions& common, std::ostream& err, DatasetSummary* summary = nullptr);
int cmd_stats(const StatsCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err);

struct BenchRecord {
  std::size_t vertex_count = 0;
  std::size_t dim = 0;
  Method method = Method::GeneratorBased;
  std::chrono::nanoseconds elapsed{0};
  bool verdict = false;
  std::uint64_t seed = 0;
};

struct BenchCommand {
  std::size_t min_m = 6;
  std::size_t max_m = 11;
  std::size_t trials = 5;
  std::size_t min_dim = 3;
  std::size_t max_dim = 6;
  std::size_t max_retries = 20000;
  std::size_t repeats = 5;  // timed calls per row, fastest kept
  std::optional<fs::path> output;  // stdout when absent
};

inline constexpr const char* kBenchCsvHeader = "m,dim,method,elapsed_ns,verdict,seed";

std::vector<BenchRecord> run_bench(const BenchCommand& cmd, const CommonOptions& common, std::ostream& err);
std::string bench_csv(const std::vector<BenchRecord>& records);
int cmd_bench(const BenchCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err);

}  // namespace polyident
