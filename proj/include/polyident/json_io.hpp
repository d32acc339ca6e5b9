#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "polyident/coloring.hpp"
#include "polyident/generator.hpp"
#include "polyident/identifiability.hpp"
#include "polyident/polytope.hpp"

namespace polyident {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Accepts rational strings, JSON integers and JSON floats. A float is read
/// through its shortest round-trip decimal text, so 0.5 -> 1/2 and 0.1 -> 1/10.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);

json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const json& j);

json hrep_to_json(const HRepresentation& h);
HRepresentation hrep_from_json(const json& j);

using PolytopeInput = std::variant<Polytope, HRepresentation>;
/// "vertices" selects the V form, "A" the H form.
PolytopeInput input_from_json(const json& j);

json permutation_to_json(const Permutation& p);
Permutation permutation_from_json(const json& j);

json matrix_to_json(const Mat& m);
json witness_to_json(const AutomorphismWitness& w);
json report_to_json(const IdentifiabilityReport& report);
json colored_graph_to_json(const ColoredGraph& g);

json config_to_json(const GeneratorConfig& c);
GeneratorConfig config_from_json(const json& j);

/// Throws Error(Io) when unreadable and Error(Parse) on malformed JSON.
json read_json_file(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
std::string dump_json(const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace polyident
