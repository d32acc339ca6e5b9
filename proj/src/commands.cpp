#include "polyident/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "polyident/error.hpp"
#include "polyident/generator.hpp"
#include "polyident/vertex_enumeration.hpp"

namespace polyident {

std::optional<std::uint64_t> search_budget_from_env() {
  const char* raw = std::getenv("POLYIDENT_SEARCH_BUDGET");
  if (!raw || !*raw) return std::nullopt;
  const std::string text(raw);
  if (text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::Parse, "POLYIDENT_SEARCH_BUDGET must be a positive integer, got '" + text + "'");
  }
  return std::stoull(text);
}

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: Parse: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

void emit(const std::string& text, const std::optional<fs::path>& path, std::ostream& out) {
  if (path) write_text_file(*path, text);
  else out << text;
}

Polytope load_polytope(const fs::path& path, bool check_bounded_flag = false) {
  auto input = input_from_json(read_json_file(path));
  if (auto* p = std::get_if<Polytope>(&input)) return std::move(*p);
  VertexEnumOptions opts;
  opts.check_bounded = check_bounded_flag;
  return enumerate_vertices(std::get<HRepresentation>(input), opts);
}

}  // namespace

int cmd_check(const CheckCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Polytope p = load_polytope(cmd.input);
    IdentifiabilityReport report;
    if (cmd.brute_force) {
      report = brute_force_identifiability(p, {common.brute_cap, true});
    } else {
      CheckOptions opts;
      opts.search.node_budget = common.search_budget;
      report = check_identifiability(p, opts);
    }
    if (common.json_out) write_text_file(*common.json_out, dump_json(report_to_json(report)));
    if (!common.quiet) {
      out << (report.identifiable ? "identifiable" : "not identifiable") << "\n";
      out << "method: " << to_string(report.method) << ", dim " << report.dim << ", " << report.vertex_count
          << " vertices, " << report.generator_witnesses.size()
          << (report.method == Method::GeneratorBased ? " generator(s) examined" : " automorphism(s)") << "\n";
      if (report.counterexample) {
        out << "counterexample perm " << report.counterexample->perm.to_string() << "\n";
        out << "  G = " << report.counterexample->linear_map.to_string() << "\n";
      }
    }
    return report.identifiable ? kExitOk : kExitNotIdentifiable;
  });
}

int cmd_vertices(const VerticesCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto h = hrep_from_json(read_json_file(cmd.input));
    VertexEnumOptions opts;
    opts.check_bounded = cmd.check_bounded;
    Polytope p = enumerate_vertices(h, opts);
    emit(dump_json(polytope_to_json(p)), cmd.output, out);
    if (!common.quiet && cmd.output) out << p.vertex_count() << " vertices written to " << cmd.output->string() << "\n";
    return kExitOk;
  });
}

std::vector<GenSample> generate_dataset(const GenCommand& cmd, const CommonOptions& common) {
  if (cmd.count == 0) throw Error(ErrorCode::InvalidConfig, "count must be at least 1");
  if (cmd.min_dim < 2 || cmd.max_dim < cmd.min_dim) throw Error(ErrorCode::InvalidConfig, "bad dimension range");

  std::vector<GenSample> samples(cmd.count);
  const auto count = static_cast<std::int64_t>(cmd.count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    GenSample& s = samples[static_cast<std::size_t>(i)];
    s.index = static_cast<std::size_t>(i);
    s.seed = mix_seed(common.seed, static_cast<std::uint64_t>(i));
    Rng rng(s.seed);
    s.dim = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(cmd.min_dim),
                                                 static_cast<std::int64_t>(cmd.max_dim)));
    try {
      GeneratorConfig config = sample_generator_config(s.dim, rng);
      config.seed = s.seed;
      Polytope p = enumerate_vertices(random_polytope_hrep(config));
      if (!validate_polytope(p).valid()) {
        s.skip_reason = "degenerate";
        s.message = validate_polytope(p).summary();
        continue;
      }
      if (p.vertex_count() > common.vertex_cap) {
        s.skip_reason = "vertex_cap";
        s.message = std::to_string(p.vertex_count()) + " vertices exceed cap " + std::to_string(common.vertex_cap);
        continue;
      }
      std::ostringstream label;
      label << "random-" << std::setw(5) << std::setfill('0') << i;
      p.label = label.str();
      json j = polytope_to_json(p);
      j["provenance"] = {{"index", i}, {"config", config_to_json(config)}};
      s.polytope = std::move(j);
    } catch (const Error& e) {
      s.skip_reason = "error";
      s.message = e.what();
    }
  }
  return samples;
}

json gen_summary(const std::vector<GenSample>& samples, const GenCommand& cmd, const CommonOptions& common) {
  json per_dim = json::object();
  json reasons = json::object();
  std::size_t written = 0;
  for (const auto& s : samples) {
    auto& d = per_dim[std::to_string(s.dim)];
    if (d.is_null()) d = {{"written", 0}, {"skipped", 0}};
    if (s.polytope) {
      ++written;
      d["written"] = d["written"].get<std::size_t>() + 1;
    } else {
      d["skipped"] = d["skipped"].get<std::size_t>() + 1;
      reasons[s.skip_reason] = reasons.value(s.skip_reason, std::size_t{0}) + 1;
    }
  }
  json out;
  out["schema_version"] = kSchemaVersion;
  out["seed"] = common.seed;
  out["dims"] = {cmd.min_dim, cmd.max_dim};
  out["vertex_cap"] = common.vertex_cap;
  out["total"] = samples.size();
  out["written"] = written;
  out["skipped"] = samples.size() - written;
  out["skip_reasons"] = std::move(reasons);
  out["per_dim"] = std::move(per_dim);
  return out;
}

int cmd_gen(const GenCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto samples = generate_dataset(cmd, common);
    std::error_code ec;
    fs::create_directories(cmd.out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + cmd.out_dir.string() + ": " + ec.message());
    for (const auto& s : samples) {
      if (!s.polytope) {
        err << "skip sample " << s.index << " (seed " << s.seed << ", dim " << s.dim << "): " << s.skip_reason
            << ": " << s.message << "\n";
        continue;
      }
      std::ostringstream name;
      name << "polytope_" << std::setw(5) << std::setfill('0') << s.index << ".json";
      write_text_file(cmd.out_dir / name.str(), dump_json(*s.polytope));
    }
    const std::string summary = dump_json(gen_summary(samples, cmd, common));
    if (common.json_out) write_text_file(*common.json_out, summary);
    if (!common.quiet) out << summary;
    return kExitOk;
  });
}

std::optional<double> DatasetSummary::fraction() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(identifiable) / static_cast<double>(total);
}

json stats_json(const fs::path& in_dir, const CommonOptions& common, std::ostream& err, DatasetSummary* summary_out) {
  if (!fs::is_directory(in_dir)) throw Error(ErrorCode::Io, in_dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  struct Outcome {
    bool ok = false;
    bool identifiable = false;
    std::size_t dim = 0, m = 0;
    std::string error;
  };
  std::vector<Outcome> outcomes(files.size());
  const auto count = static_cast<std::int64_t>(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    auto& o = outcomes[static_cast<std::size_t>(i)];
    try {
      Polytope p = load_polytope(files[static_cast<std::size_t>(i)]);
      CheckOptions opts;
      opts.search.node_budget = common.search_budget;
      const auto report = check_identifiability(p, opts);
      o.ok = true;
      o.identifiable = report.identifiable;
      o.dim = p.dim();
      o.m = p.vertex_count();
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  }

  DatasetSummary summary;
  json per_file = json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& o = outcomes[i];
    const auto name = files[i].filename().string();
    if (!o.ok) {
      ++summary.skipped;
      err << "skip " << name << ": " << o.error << "\n";
      per_file.push_back({{"file", name}, {"error", o.error}});
      continue;
    }
    ++summary.total;
    auto& d = summary.per_dim[o.dim];
    ++d.total;
    if (o.identifiable) {
      ++summary.identifiable;
      ++d.identifiable;
    }
    per_file.push_back({{"file", name}, {"dim", o.dim}, {"m", o.m}, {"identifiable", o.identifiable}});
  }

  json out;
  out["schema_version"] = kSchemaVersion;
  out["total"] = summary.total;
  out["identifiable"] = summary.identifiable;
  out["skipped"] = summary.skipped;
  out["fraction"] = summary.fraction() ? json(*summary.fraction()) : json(nullptr);
  json dims = json::object();
  for (const auto& [dim, t] : summary.per_dim) {
    dims[std::to_string(dim)] = {{"total", t.total},
                                 {"identifiable", t.identifiable},
                                 {"fraction", static_cast<double>(t.identifiable) / static_cast<double>(t.total)}};
  }
  out["per_dim"] = std::move(dims);
  out["files"] = std::move(per_file);
  if (summary_out) *summary_out = summary;
  return out;
}

int cmd_stats(const StatsCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    DatasetSummary summary;
    const std::string text = dump_json(stats_json(cmd.in_dir, common, err, &summary));
    emit(text, cmd.output, out);
    if (!common.quiet && cmd.output) {
      out << summary.identifiable << " / " << summary.total << " identifiable";
      if (summary.skipped) out << " (" << summary.skipped << " skipped)";
      out << "\n";
    }
    return kExitOk;
  });
}

namespace {

// The first polytope with exactly m vertices drawn from the (seed, m, trial) stream.
std::optional<std::pair<Polytope, std::uint64_t>> sample_with_vertices(const BenchCommand& cmd, std::uint64_t seed,
                                                                       std::size_t m, std::size_t trial) {
  const std::size_t hi = std::min(cmd.max_dim, m - 1);
  if (hi < cmd.min_dim) return std::nullopt;
  Rng stream(mix_seed(seed, (static_cast<std::uint64_t>(m) << 32) | trial));
  for (std::size_t attempt = 0; attempt < cmd.max_retries; ++attempt) {
    const std::uint64_t sample_seed = stream.next();
    Rng rng(sample_seed);
    const auto n = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(cmd.min_dim), static_cast<std::int64_t>(hi)));
    GeneratorConfig config = sample_generator_config(n, rng);
    config.seed = sample_seed;
    Polytope p = enumerate_vertices(random_polytope_hrep(config));
    if (p.vertex_count() != m || !validate_polytope(p).valid()) continue;
    return std::make_pair(std::move(p), sample_seed);
  }
  return std::nullopt;
}

// One untimed warm-up call, then up to `repeats` timed calls keeping the
// fastest; stops early once the timed calls add up to 50 ms.
template <typename Fn>
IdentifiabilityReport best_of(std::size_t repeats, Fn&& fn) {
  (void)fn();
  auto best = fn();
  auto total = best.elapsed;
  for (std::size_t r = 1; r < repeats && total < std::chrono::milliseconds(50); ++r) {
    auto next = fn();
    total += next.elapsed;
    if (next.elapsed < best.elapsed) best = std::move(next);
  }
  return best;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchCommand& cmd, const CommonOptions& common, std::ostream& err) {
  if (cmd.min_m < 4) throw Error(ErrorCode::InvalidConfig, "min-m must be at least 4");
  if (cmd.max_m < cmd.min_m) throw Error(ErrorCode::InvalidConfig, "max-m below min-m");
  if (cmd.max_m > common.brute_cap + 1) {
    throw Error(ErrorCode::InvalidConfig, "max-m may exceed the brute-force cap by at most one");
  }
  if (cmd.trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");

  std::vector<BenchRecord> records;
  CheckOptions check;
  check.search.node_budget = common.search_budget;
  const BruteForceOptions brute{common.brute_cap, false};
  for (std::size_t m = cmd.min_m; m <= cmd.max_m; ++m) {
    for (std::size_t t = 0; t < cmd.trials; ++t) {
      auto sample = sample_with_vertices(cmd, common.seed, m, t);
      if (!sample) {
        err << "bench: no polytope with " << m << " vertices after " << cmd.max_retries << " draws (trial " << t
            << "); row skipped\n";
        continue;
      }
      const auto& [p, sample_seed] = *sample;
      const auto gen = best_of(cmd.repeats, [&] { return check_identifiability(p, check); });
      records.push_back({m, p.dim(), Method::GeneratorBased, gen.elapsed, gen.identifiable, sample_seed});
      if (m > common.brute_cap) continue;
      const auto bf = best_of(cmd.repeats, [&] { return brute_force_identifiability(p, brute); });
      records.push_back({m, p.dim(), Method::BruteForce, bf.elapsed, bf.identifiable, sample_seed});
      if (bf.identifiable != gen.identifiable) {
        throw Error(ErrorCode::InvalidConfig, "methods disagree on polytope with seed " + std::to_string(sample_seed));
      }
    }
  }
  return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << kBenchCsvHeader << "\n";
  for (const auto& r : records) {
    os << r.vertex_count << ',' << r.dim << ',' << to_string(r.method) << ',' << r.elapsed.count() << ','
       << (r.verdict ? "true" : "false") << ',' << r.seed << "\n";
  }
  return os.str();
}

int cmd_bench(const BenchCommand& cmd, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto records = run_bench(cmd, common, err);
    emit(bench_csv(records), cmd.output, out);
    return kExitOk;
  });
}

}  // namespace polyident
