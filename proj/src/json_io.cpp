#include "polyident/json_io.hpp"

#include <fstream>
#include <sstream>

#include "polyident/error.hpp"

namespace polyident {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    schema(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<Rational> rational_row(const json& j, std::size_t expected, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array");
  if (j.size() != expected) {
    schema(what + " has " + std::to_string(j.size()) + " entries, expected " + std::to_string(expected));
  }
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<std::uint64_t>())))
                                  : Rational(Integer(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_number_float()) {
    const std::string text = j.dump();
    if (text.find_first_of("eE") != std::string::npos) schema("exponent notation is not supported: " + text);
    return parse_rational(text);
  }
  schema("expected a rational number, got " + j.dump());
}

json rational_to_json(const Rational& q) { return to_string(q); }

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json polytope_to_json(const Polytope& p) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["dim"] = p.dim();
  json verts = json::array();
  for (std::size_t j = 0; j < p.vertex_count(); ++j) {
    json v = json::array();
    for (std::size_t r = 0; r < p.dim(); ++r) v.push_back(rational_to_json(p.vertices(r, j)));
    verts.push_back(std::move(v));
  }
  out["vertices"] = std::move(verts);
  if (p.label) out["label"] = *p.label;
  return out;
}

Polytope polytope_from_json(const json& j) {
  const std::size_t n = count_field(j, "dim");
  const auto& verts = field(j, "vertices");
  if (!verts.is_array()) schema("'vertices' must be an array");
  Mat v(n, verts.size());
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const auto row = rational_row(verts[k], n, "vertex " + std::to_string(k));
    for (std::size_t r = 0; r < n; ++r) v(r, k) = row[r];
  }
  std::optional<std::string> label;
  if (j.contains("label") && !j.at("label").is_null()) {
    if (!j.at("label").is_string()) schema("'label' must be a string");
    label = j.at("label").get<std::string>();
  }
  return Polytope(std::move(v), std::move(label));
}

json hrep_to_json(const HRepresentation& h) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["dim"] = h.dim();
  out["A"] = matrix_to_json(h.a);
  json b = json::array();
  for (const auto& x : h.b) b.push_back(rational_to_json(x));
  out["b"] = std::move(b);
  return out;
}

HRepresentation hrep_from_json(const json& j) {
  const std::size_t n = count_field(j, "dim");
  const auto& a = field(j, "A");
  if (!a.is_array()) schema("'A' must be an array");
  HRepresentation h{Mat(a.size(), n), rational_row(field(j, "b"), a.size(), "'b'")};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto row = rational_row(a[i], n, "row " + std::to_string(i) + " of 'A'");
    bool nonzero = false;
    for (std::size_t c = 0; c < n; ++c) {
      h.a(i, c) = row[c];
      nonzero = nonzero || sgn(row[c]) != 0;
    }
    if (!nonzero) schema("row " + std::to_string(i) + " of 'A' is zero");
  }
  return h;
}

PolytopeInput input_from_json(const json& j) {
  if (j.is_object() && j.contains("vertices")) return polytope_from_json(j);
  if (j.is_object() && j.contains("A")) return hrep_from_json(j);
  schema("input is neither a polytope ('vertices') nor an H-representation ('A', 'b')");
}

json permutation_to_json(const Permutation& p) { return p.image(); }

Permutation permutation_from_json(const json& j) {
  if (!j.is_array()) schema("permutation must be an array");
  std::vector<int> image;
  for (const auto& x : j) {
    if (!x.is_number_integer()) schema("permutation entries must be integers");
    image.push_back(x.get<int>());
  }
  try {
    return Permutation(std::move(image));
  } catch (const Error& e) {
    schema(e.what());
  }
}

json witness_to_json(const AutomorphismWitness& w) {
  json out;
  out["perm"] = permutation_to_json(w.perm);
  out["G"] = matrix_to_json(w.linear_map);
  out["signed_perm"] = w.signed_perm;
  if (w.decomposition) {
    out["decomposition"] = {{"signs", w.decomposition->signs},
                            {"perm", permutation_to_json(w.decomposition->perm)}};
  }
  return out;
}

json report_to_json(const IdentifiabilityReport& report) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["identifiable"] = report.identifiable;
  out["method"] = to_string(report.method);
  out["dim"] = report.dim;
  out["m"] = report.vertex_count;
  out["num_generators"] = report.generator_witnesses.size();
  json gens = json::array();
  for (const auto& w : report.generator_witnesses) gens.push_back(witness_to_json(w));
  out["generators"] = std::move(gens);
  out["counterexample"] = report.counterexample ? witness_to_json(*report.counterexample) : json(nullptr);
  out["elapsed_ms"] = std::chrono::duration<double, std::milli>(report.elapsed).count();
  return out;
}

json colored_graph_to_json(const ColoredGraph& g) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["m"] = g.m;
  out["node_color"] = g.node_color;
  json edges = json::array();
  for (std::size_t i = 0; i < g.m; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.m; ++j) row.push_back(g.edge(i, j));
    edges.push_back(std::move(row));
  }
  out["edge_color"] = std::move(edges);
  json palette = json::array();
  for (const auto& x : g.palette) palette.push_back(rational_to_json(x));
  out["palette"] = std::move(palette);
  return out;
}

json config_to_json(const GeneratorConfig& c) {
  json out;
  out["dim"] = c.dim;
  out["seed"] = c.seed;
  json signs = json::array();
  for (auto s : c.sign_pattern) signs.push_back(s == Sign::Signed ? "signed" : "nonnegative");
  out["sign_pattern"] = std::move(signs);
  json cons = json::array();
  for (const auto& k : c.constraints) cons.push_back(k.indices);
  out["constraints"] = std::move(cons);
  return out;
}

GeneratorConfig config_from_json(const json& j) {
  GeneratorConfig c;
  c.dim = count_field(j, "dim");
  c.seed = field(j, "seed").get<std::uint64_t>();
  for (const auto& s : field(j, "sign_pattern")) {
    const auto text = s.get<std::string>();
    if (text == "signed") c.sign_pattern.push_back(Sign::Signed);
    else if (text == "nonnegative") c.sign_pattern.push_back(Sign::NonNegative);
    else schema("unknown sign '" + text + "'");
  }
  for (const auto& k : field(j, "constraints")) c.constraints.push_back({k.get<std::vector<int>>()});
  validate_config(c);
  return c;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace polyident
