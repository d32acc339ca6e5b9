// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "corpus.hpp"
#include "polyident/automorphism.hpp"
#include "polyident/coloring.hpp"
#include "polyident/commands.hpp"
#include "polyident/error.hpp"
#include "polyident/generator.hpp"
#include "polyident/group.hpp"
#include "polyident/identifiability.hpp"
#include "polyident/json_io.hpp"

using namespace polyident;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kFixtures = POLYIDENT_FIXTURES_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Polytope load(const char* name) { return std::get<Polytope>(input_from_json(read_json_file(kFixtures / name))); }

ColoredGraph graph_of(const Polytope& p) { return build_colored_graph(coloring_matrix(p)); }

// Shared corpus for the oracle and group-theory criteria.
const std::vector<Polytope>& oracle_corpus() {
  static const auto polys = corpus::random_polytopes(220, 20240601, {3, 5, 10});
  return polys;
}

// ---- 1 ---------------------------------------------------------------------

Outcome coloring_regression() {
  const auto p = corpus::l1_ball(3);
  const auto t0 = Clock::now();
  const auto c = coloring_matrix(p).c;
  const double ms = seconds_since(t0) * 1e3;
  bool exact = c.rows() == 6 && c.cols() == 6;
  for (std::size_t i = 0; exact && i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const Rational want = i == j ? Rational(1, 2) : (i + 3 == j || j + 3 == i) ? Rational(-1, 2) : Rational(0);
      exact = exact && c(i, j) == want;
    }
  return {exact && ms < 1.0, fmt("exact=%s, %.3f ms", exact ? "yes" : "no", ms)};
}

// ---- 2 ---------------------------------------------------------------------

struct OracleRun {
  std::size_t agree = 0, total = 0, not_identifiable = 0;
  double seconds = 0;
  std::string payload;
};

OracleRun oracle_equivalence_run() {
  OracleRun run;
  const auto t0 = Clock::now();
  json rows = json::array();
  for (std::size_t i = 0; i < oracle_corpus().size(); ++i) {
    const auto& p = oracle_corpus()[i];
    const auto gen = check_identifiability(p);
    const auto bf = brute_force_identifiability(p, {10, true});
    ++run.total;
    run.agree += gen.identifiable == bf.identifiable;
    run.not_identifiable += !bf.identifiable;
    json row;
    row["index"] = i;
    row["dim"] = p.dim();
    row["m"] = p.vertex_count();
    row["generator_based"] = gen.identifiable;
    row["brute_force"] = bf.identifiable;
    json gens = json::array();
    for (const auto& w : gen.generator_witnesses) gens.push_back(permutation_to_json(w.perm));
    row["generators"] = std::move(gens);
    row["automorphisms"] = bf.generator_witnesses.size();
    row["counterexample"] = bf.counterexample ? permutation_to_json(bf.counterexample->perm) : json(nullptr);
    rows.push_back(std::move(row));
  }
  run.seconds = seconds_since(t0);
  run.payload = dump_json(rows);
  return run;
}

Outcome oracle_equivalence(const OracleRun& run) {
  const bool ok = run.total >= 200 && run.agree == run.total && run.seconds < 300;
  return {ok, fmt("%zu/%zu verdicts agree (%zu not identifiable), %.1f s", run.agree, run.total, run.not_identifiable,
                  run.seconds)};
}

// ---- 3 ---------------------------------------------------------------------

Outcome fixtures() {
  std::vector<std::string> failures;
  if (!check_identifiability(load("l1_ball_3d.json")).identifiable) failures.push_back("l1 ball");
  for (std::size_t n = 2; n <= 4; ++n) {
    if (!check_identifiability(corpus::cube(n)).identifiable) failures.push_back("cube " + std::to_string(n));
  }
  for (std::size_t n = 2; n <= 3; ++n) {
    if (!brute_force_identifiability(corpus::cube(n)).identifiable) failures.push_back("cube oracle " + std::to_string(n));
  }
  const Mat golden{{0, -1}, {1, -1}};
  const auto tri = load("triangle.json");
  const auto gen = check_identifiability(tri);
  if (gen.identifiable || !gen.counterexample || gen.counterexample->linear_map != golden) {
    failures.push_back("triangle counterexample");
  }
  // Brute-force confirmation: the golden map is an automorphism witness, it is
  // not a signed permutation, and the oracle reports the same counterexample.
  const auto bf = brute_force_identifiability(tri);
  const bool witnessed = std::any_of(bf.generator_witnesses.begin(), bf.generator_witnesses.end(),
                                     [&](const AutomorphismWitness& w) { return w.linear_map == golden && !w.signed_perm; });
  if (bf.identifiable || !witnessed || !bf.counterexample || bf.counterexample->linear_map != golden) {
    failures.push_back("triangle oracle");
  }
  std::string detail = "l1 ball, cubes n=2..4 identifiable; triangle G = " +
                       (gen.counterexample ? gen.counterexample->linear_map.to_string() : std::string("none"));
  for (const auto& f : failures) detail += "; failed: " + f;
  return {failures.empty(), detail};
}

// ---- 4 ---------------------------------------------------------------------

bool closed(const std::vector<Permutation>& group) {
  const std::set<Permutation> members(group.begin(), group.end());
  for (const auto& a : group) {
    if (!members.count(a.inverse())) return false;
    for (const auto& b : group)
      if (!members.count(a * b)) return false;
  }
  return true;
}

Outcome group_properties() {
  std::size_t witnesses = 0, bad_det = 0, groups = 0, not_closed = 0, mismatched = 0;
  auto polys = oracle_corpus();
  polys.push_back(load("l1_ball_3d.json"));
  polys.push_back(load("triangle.json"));
  polys.push_back(corpus::cube(3));
  for (const auto& p : polys) {
    const auto bf = brute_force_identifiability(p);
    for (const auto& w : bf.generator_witnesses) {
      const auto d = determinant(w.linear_map);
      ++witnesses;
      bad_det += !(d == 1 || d == -1);
    }
    const auto g = graph_of(p);
    const auto group = expand_group(automorphism_generators(g), 1'000'000);
    ++groups;
    not_closed += !closed(group);
    mismatched += group != brute_force_automorphisms(g);
  }
  const auto l1 = graph_of(load("l1_ball_3d.json"));
  const auto order = expand_group(automorphism_generators(l1), 1000).size();
  const auto brute = brute_force_automorphisms(l1).size();
  const bool ok = bad_det == 0 && not_closed == 0 && mismatched == 0 && order == 48 && brute == 48;
  return {ok, fmt("%zu witnesses with det = +-1 (%zu bad); %zu groups closed (%zu not, %zu differ from brute force); "
                  "l1 ball order %zu (brute force %zu)",
                  witnesses - bad_det, bad_det, groups - not_closed, not_closed, mismatched, order, brute)};
}

// ---- 5 ---------------------------------------------------------------------

Outcome map_color_equivalence() {
  Rng rng(5);
  std::size_t random_pairs = 0, auto_pairs = 0, failures = 0, with_map = 0;
  const auto& polys = oracle_corpus();
  for (std::size_t k = 0; k < 1000; ++k) {
    const auto& p = polys[k % polys.size()];
    std::vector<int> img(p.vertex_count());
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t i = img.size(); i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
    const Permutation perm(img);
    failures += !verify_map_color_equivalence(p, perm);
    with_map += linear_map_for(p, perm).has_value();
    ++random_pairs;
  }
  for (const auto& p : polys) {
    for (const auto& a : expand_group(automorphism_generators(graph_of(p)), 1'000'000)) {
      failures += !verify_map_color_equivalence(p, a);
      ++auto_pairs;
    }
  }
  return {failures == 0, fmt("%zu random pairs (%zu with a map) and %zu discovered automorphisms, %zu failures",
                             random_pairs, with_map, auto_pairs, failures)};
}

// ---- 6 ---------------------------------------------------------------------

Outcome generator_bound() {
  std::size_t graphs = 0, violations = 0, max_seen = 0;
  auto check = [&](const Polytope& p) {
    const auto sifted = sift_generators(automorphism_generators(graph_of(p)));
    ++graphs;
    violations += sifted.generators.size() + 1 > p.vertex_count();
    max_seen = std::max(max_seen, sifted.generators.size());
  };
  for (const auto& p : oracle_corpus()) check(p);
  for (const char* f : {"l1_ball_3d.json", "cube_3d.json", "triangle.json", "square.json"}) check(load(f));
  for (std::size_t n = 2; n <= 5; ++n) {
    check(corpus::cube(n));
    check(corpus::l1_ball(n));
  }
  CommonOptions common;
  common.seed = 1;
  for (const auto& s : generate_dataset(GenCommand{3, 6, 500, {}}, common)) {
    if (s.polytope) check(polytope_from_json(*s.polytope));
  }
  return {violations == 0, fmt("%zu graphs, %zu over m-1, largest sifted set %zu", graphs, violations, max_seen)};
}

// ---- 7 ---------------------------------------------------------------------

struct DatasetRun {
  DatasetSummary summary;
  double seconds = 0;
  std::string payload;
};

DatasetRun dataset_run(const std::string& tag) {
  DatasetRun run;
  const fs::path dir = fs::temp_directory_path() / ("polyident_acceptance_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  CommonOptions common;
  common.seed = 1;
  common.quiet = true;
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  const int gen_status = cmd_gen(GenCommand{3, 6, 500, dir}, common, out, err);
  const auto stats = stats_json(dir, common, err, &run.summary);
  run.seconds = seconds_since(t0);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string payload = out.str() + dump_json(stats);
  for (const auto& f : files) payload += f.filename().string() + "\n" + slurp(f);
  run.payload = gen_status == kExitOk ? payload : "gen failed";
  fs::remove_all(dir);
  return run;
}

Outcome dataset_statistic(const DatasetRun& run) {
  const auto fraction = run.summary.fraction().value_or(0.0);
  const bool ok = run.summary.total > 0 && fraction >= 0.85 && run.seconds < 900;
  return {ok, fmt("%zu/%zu identifiable (fraction %.4f), %zu skipped at check, %.1f s", run.summary.identifiable,
                  run.summary.total, fraction, run.summary.skipped, run.seconds)};
}

// ---- 8 ---------------------------------------------------------------------

struct BenchRun {
  std::vector<BenchRecord> records;
  std::string payload;  // CSV without the elapsed_ns column
};

BenchRun bench_run() {
  CommonOptions common;
  common.seed = 1;
  common.brute_cap = 11;
  BenchCommand cmd;
  cmd.min_m = 6;
  cmd.max_m = 11;
  cmd.trials = 5;
  std::ostringstream err;
  BenchRun run;
  run.records = run_bench(cmd, common, err);
  std::istringstream csv(bench_csv(run.records));
  for (std::string line; std::getline(csv, line);) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    cols.erase(cols.begin() + 3);
    for (std::size_t i = 0; i < cols.size(); ++i) run.payload += (i ? "," : "") + cols[i];
    run.payload += "\n";
  }
  return run;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

Outcome timing_shape(const BenchRun& run) {
  std::map<std::pair<std::size_t, Method>, std::vector<double>> t;
  for (const auto& r : run.records) t[{r.vertex_count, r.method}].push_back(static_cast<double>(r.elapsed.count()));
  bool ok = true;
  std::string detail = "brute medians (us):";
  double prev = 0;
  for (std::size_t m = 6; m <= 11; ++m) {
    const auto& samples = t[{m, Method::BruteForce}];
    if (samples.size() != 5 || t[{m, Method::GeneratorBased}].size() != 5) {
      ok = false;
      detail += fmt(" m=%zu missing rows;", m);
      continue;
    }
    const double med = median(samples);
    detail += fmt(" %zu:%.0f", m, med / 1e3);
    if (m > 6) {
      const double ratio = med / prev;
      detail += fmt("(x%.1f)", ratio);
      ok = ok && ratio > static_cast<double>(m) / 2.0;
    }
    prev = med;
  }
  const double gen11 = t[{11, Method::GeneratorBased}].empty() ? 1e300 : median(t[{11, Method::GeneratorBased}]);
  const double bf11 = t[{11, Method::BruteForce}].empty() ? 0 : median(t[{11, Method::BruteForce}]);
  ok = ok && gen11 < bf11;
  detail += fmt("; m=11 generator %.0f us vs brute %.0f us", gen11 / 1e3, bf11 / 1e3);
  return {ok, detail};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  };
  auto guarded = [](const std::function<Outcome()>& fn) -> Outcome {
    try {
      return fn();
    } catch (const std::exception& e) {
      return {false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "coloring matrix regression", guarded(coloring_regression));

  std::optional<OracleRun> oracle;
  report(2, "oracle equivalence", guarded([&] {
           oracle = oracle_equivalence_run();
           return oracle_equivalence(*oracle);
         }));
  report(3, "fixtures", guarded(fixtures));
  report(4, "group-theory properties", guarded(group_properties));
  report(5, "map/color equivalence", guarded(map_color_equivalence));
  report(6, "generator bound", guarded(generator_bound));

  std::optional<DatasetRun> dataset;
  report(7, "dataset statistic", guarded([&] {
           dataset = dataset_run("a");
           return dataset_statistic(*dataset);
         }));

  std::optional<BenchRun> bench;
  report(8, "timing shape", guarded([&] {
           bench = bench_run();
           return timing_shape(*bench);
         }));

  report(9, "determinism", guarded([&]() -> Outcome {
           if (!oracle || !dataset || !bench) return {false, "an earlier run did not complete"};
           const bool c2 = oracle_equivalence_run().payload == oracle->payload;
           const bool c7 = dataset_run("b").payload == dataset->payload;
           const bool c8 = bench_run().payload == bench->payload;
           return {c2 && c7 && c8, fmt("oracle payload %s, dataset payload %s, bench CSV %s (elapsed_ns excluded)",
                                       c2 ? "identical" : "DIFFERS", c7 ? "identical" : "DIFFERS",
                                       c8 ? "identical" : "DIFFERS")};
         }));

  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
