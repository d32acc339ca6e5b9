#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "corpus.hpp"
#include "polyident/commands.hpp"
#include "polyident/error.hpp"
#include "polyident/generator.hpp"
#include "polyident/identifiability.hpp"
#include "polyident/json_io.hpp"

using namespace polyident;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = POLYIDENT_FIXTURES_DIR;

fs::path fixture(const char* name) { return kFixtures / name; }

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("polyident_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
  const fs::path out = fs::temp_directory_path() / ("polyident_cli_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string("\"") + POLYIDENT_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (stdout_text) *stdout_text = slurp(out);
  fs::remove(out);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("rational values from JSON") {
  CHECK(rational_from_json(json("3/4")) == Rational(3, 4));
  CHECK(rational_from_json(json(-2)) == -2);
  CHECK(rational_from_json(json(0.5)) == Rational(1, 2));
  CHECK(rational_from_json(json(0.1)) == Rational(1, 10));
  CHECK(rational_from_json(json(18446744073709551615ULL)) == Rational(Integer("18446744073709551615")));
  CHECK_THROWS_AS(rational_from_json(json(1e300)), Error);
  CHECK_THROWS_AS(rational_from_json(json(true)), Error);
  CHECK_THROWS_AS(rational_from_json(json("x")), Error);
}

TEST_CASE("polytope and H-representation round trips") {
  Polytope p(Mat{{1, Rational(-1, 3), 0}, {0, 2, Rational(5, 7)}}, "sample");
  const auto back = polytope_from_json(polytope_to_json(p));
  CHECK(back.vertices == p.vertices);
  CHECK(back.label == p.label);
  CHECK(polytope_to_json(p)["schema_version"] == kSchemaVersion);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = random_polytope_hrep(sample_generator_config(2 + seed % 4, seed));
    const auto hb = hrep_from_json(json::parse(dump_json(hrep_to_json(h))));
    CHECK(hb.a == h.a);
    CHECK(hb.b == h.b);
    const auto c = sample_generator_config(2 + seed % 4, seed);
    const auto cb = config_from_json(config_to_json(c));
    CHECK(cb.seed == c.seed);
    CHECK(cb.sign_pattern == c.sign_pattern);
    REQUIRE(cb.constraints.size() == c.constraints.size());
    for (std::size_t i = 0; i < c.constraints.size(); ++i) CHECK(cb.constraints[i].indices == c.constraints[i].indices);
  }

  CHECK(std::holds_alternative<Polytope>(input_from_json(read_json_file(fixture("triangle.json")))));
  CHECK(std::holds_alternative<HRepresentation>(input_from_json(read_json_file(fixture("cube_3d_hrep.json")))));
  CHECK_THROWS_AS(input_from_json(json::object()), Error);
  CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"dim": 2, "vertices": [[1, 0], [0]]})")), Error);
  CHECK_THROWS_AS(hrep_from_json(json::parse(R"({"dim": 1, "A": [[0]], "b": [1]})")), Error);
  CHECK(permutation_from_json(permutation_to_json(Permutation({2, 0, 1}))) == Permutation({2, 0, 1}));
  CHECK_THROWS_AS(permutation_from_json(json::parse("[0, 0]")), Error);
}

TEST_CASE("file errors") {
  try {
    (void)read_json_file(fixture("malformed.json"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
  try {
    (void)read_json_file(fixture("does_not_exist.json"));
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("report JSON") {
  const auto r = check_identifiability(corpus::triangle());
  const auto j = report_to_json(r);
  CHECK(j["identifiable"] == false);
  CHECK(j["method"] == "generator_based");
  CHECK(j["m"] == 3);
  CHECK(j["dim"] == 2);
  CHECK(j["counterexample"]["G"] == json::parse(R"([["0", "-1"], ["1", "-1"]])"));
  CHECK(j["counterexample"]["perm"] == json::parse("[1, 2, 0]"));
  CHECK(j["counterexample"]["signed_perm"] == false);
  const auto ok = report_to_json(check_identifiability(corpus::l1_ball(3)));
  CHECK(ok["counterexample"].is_null());
  CHECK(ok["generators"][0].contains("decomposition"));
}

TEST_CASE("check command") {
  CommonOptions common;
  common.quiet = true;
  std::ostringstream out, err;
  CHECK(cmd_check({fixture("l1_ball_3d.json"), false}, common, out, err) == kExitOk);
  CHECK(cmd_check({fixture("cube_3d.json"), false}, common, out, err) == kExitOk);
  CHECK(cmd_check({fixture("triangle.json"), false}, common, out, err) == kExitNotIdentifiable);
  CHECK(cmd_check({fixture("triangle.json"), true}, common, out, err) == kExitNotIdentifiable);
  CHECK(cmd_check({fixture("malformed.json"), false}, common, out, err) == kExitError);
  CHECK(cmd_check({fixture("nope.json"), false}, common, out, err) == kExitError);
  CHECK(cmd_check({fixture("l1_ball_3d_hrep.json"), false}, common, out, err) == kExitOk);

  // An H-representation decides like its enumerated vertices.
  TempDir dir("check");
  CHECK(cmd_vertices({fixture("cube_3d_hrep.json"), dir.path / "v.json", false}, common, out, err) == kExitOk);
  common.json_out = dir.path / "a.json";
  (void)cmd_check({fixture("cube_3d_hrep.json"), false}, common, out, err);
  common.json_out = dir.path / "b.json";
  (void)cmd_check({dir.path / "v.json", false}, common, out, err);
  auto a = read_json_file(dir.path / "a.json"), b = read_json_file(dir.path / "b.json");
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  CHECK(a == b);

  std::ostringstream text;
  CommonOptions loud;
  CHECK(cmd_check({fixture("triangle.json"), false}, loud, text, err) == kExitNotIdentifiable);
  CHECK(text.str().find("not identifiable") != std::string::npos);
  CHECK(text.str().find("[1,2,0]") != std::string::npos);
}

TEST_CASE("vertices command") {
  CommonOptions common;
  std::ostringstream out, err;
  CHECK(cmd_vertices({fixture("cube_3d_hrep.json"), std::nullopt, false}, common, out, err) == kExitOk);
  CHECK(polytope_from_json(json::parse(out.str())).vertex_count() == 8);
  out.str("");
  CHECK(cmd_vertices({fixture("l1_ball_3d_hrep.json"), std::nullopt, true}, common, out, err) == kExitOk);
  const auto l1 = polytope_from_json(json::parse(out.str()));
  CHECK(l1.vertex_count() == 6);
  CHECK(l1.vertices == Mat{{-1, 0, 0, 0, 0, 1}, {0, -1, 0, 0, 1, 0}, {0, 0, -1, 1, 0, 0}});
  CHECK(cmd_vertices({fixture("halfspace_hrep.json"), std::nullopt, true}, common, out, err) == kExitError);
  CHECK(cmd_vertices({fixture("orthant_hrep.json"), std::nullopt, true}, common, out, err) == kExitError);
}

TEST_CASE("gen and stats commands") {
  CommonOptions common;
  common.seed = 7;
  common.quiet = true;
  std::ostringstream out, err;
  TempDir one("gen1"), two("gen2");
  GenCommand gen{3, 3, 5, one.path};
  CHECK(cmd_gen(gen, common, out, err) == kExitOk);
  gen.out_dir = two.path;
  CHECK(cmd_gen(gen, common, out, err) == kExitOk);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(one.path)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  CHECK(names.size() <= 5);
  CHECK(!names.empty());
  for (const auto& n : names) CHECK(slurp(one.path / n) == slurp(two.path / n));

  const auto samples = generate_dataset(GenCommand{3, 6, 60, {}}, common);
  CHECK(samples.size() == 60);
  const auto summary = gen_summary(samples, GenCommand{3, 6, 60, {}}, common);
  CHECK(summary["total"] == 60);
  CHECK(summary["written"].get<int>() + summary["skipped"].get<int>() == 60);

  TempDir fx("stats");
  for (const char* f : {"l1_ball_3d.json", "cube_3d.json", "triangle.json"}) fs::copy(fixture(f), fx.path / f);
  DatasetSummary s;
  const auto j = stats_json(fx.path, common, err, &s);
  CHECK(s.total == 3);
  CHECK(s.identifiable == 2);
  CHECK(j["fraction"].get<double>() == doctest::Approx(2.0 / 3.0));

  TempDir empty("empty");
  const auto e = stats_json(empty.path, common, err);
  CHECK(e["total"] == 0);
  CHECK(e["fraction"].is_null());

  fs::copy(fixture("malformed.json"), fx.path / "zz.json");
  DatasetSummary with_bad;
  (void)stats_json(fx.path, common, err, &with_bad);
  CHECK(with_bad.skipped == 1);
  CHECK(with_bad.total == 3);
}

TEST_CASE("bench command") {
  CommonOptions common;
  common.seed = 3;
  std::ostringstream err;
  BenchCommand bench;
  bench.min_m = 6;
  bench.max_m = 8;
  bench.trials = 2;
  const auto rows = run_bench(bench, common, err);
  std::map<std::pair<std::size_t, Method>, int> per;
  for (const auto& r : rows) per[{r.vertex_count, r.method}]++;
  for (std::size_t m = 6; m <= 8; ++m) {
    CHECK(per[{m, Method::GeneratorBased}] == 2);
    CHECK(per[{m, Method::BruteForce}] == 2);
  }
  const auto csv = bench_csv(rows);
  CHECK(csv.rfind("m,dim,method,elapsed_ns,verdict,seed\n", 0) == 0);

  bench.max_m = 12;
  CHECK_THROWS_AS(run_bench(bench, common, err), Error);
  bench.max_m = 8;
  bench.min_m = 3;
  CHECK_THROWS_AS(run_bench(bench, common, err), Error);
}

TEST_CASE("command-line exit codes") {
  const std::string fx = kFixtures.string() + "/";
  std::string text;
  CHECK(run_cli("check \"" + fx + "l1_ball_3d.json\"", &text) == 0);
  CHECK(text.find("identifiable") != std::string::npos);
  CHECK(run_cli("check \"" + fx + "triangle.json\"", &text) == 1);
  CHECK(text.find("counterexample") != std::string::npos);
  CHECK(run_cli("check --brute-force \"" + fx + "cube_3d.json\"") == 0);
  CHECK(run_cli("check \"" + fx + "malformed.json\"") == 2);
  CHECK(run_cli("vertices \"" + fx + "l1_ball_3d_hrep.json\"", &text) == 0);
  CHECK(polytope_from_json(json::parse(text)).vertex_count() == 6);
  CHECK(run_cli("vertices --check-bounded \"" + fx + "halfspace_hrep.json\"") == 2);
  CHECK(run_cli("gen --count 0 --out-dir \"" + fs::temp_directory_path().string() + "/polyident_unused\"") == 2);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("") == 2);
}
