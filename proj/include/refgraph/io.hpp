#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "refgraph/conjecture.hpp"
#include "refgraph/dnf.hpp"
#include "refgraph/formula.hpp"
#include "refgraph/graph.hpp"

namespace refgraph {

using json = nlohmann::ordered_json;

inline constexpr int kDocumentVersion = 1;

/// A parsed graph file: a signed reference graph or a bare DAG.
using GraphDocument = std::variant<RefGraph, BareDag>;

/// Formula JSON: {"var": id}, {"xi": tag}, {"not": f}, {"and": [..]},
/// {"or": [..]}, true, false. Printed canonically (operands sorted).
json formula_to_json(const Formula& f);
Formula formula_from_json(const json& j);

json graph_to_json(const RefGraph& g);
json dag_to_json(const BareDag& d);
json dnf_to_json(const Dnf& d);

/// JSON (first non-blank character '{') or the line DSL. Throws ParseError on
/// malformed input and GraphError when the graph breaks an invariant; with
/// `validate` false the structural checks are skipped.
GraphDocument parse_graph(std::string_view text, bool validate = true);
/// As parse_graph, rejecting bare documents.
RefGraph parse_refgraph(std::string_view text, bool validate = true);
/// Accepts both kinds; signs and formulas are forgotten.
BareDag parse_bare(std::string_view text);

/// DSL formula: `|` of `&` of unaries; a unary is `!u`, `(f)`, `true`,
/// `false`, a node id or a frontier leaf `$tag`.
Formula parse_formula(std::string_view text);

/// dump(2) of graph_to_json / dag_to_json plus a newline.
std::string print_graph_json(const RefGraph& g);
std::string print_dag_json(const BareDag& d);
/// One line per node: `id = formula` or a bare `id` for sinks.
std::string print_graph_dsl(const RefGraph& g);

json injection_to_json(const Injection& inj);
Injection injection_from_json(const json& j);

/// Reads a whole file, "-" meaning standard input. Throws Error when unreadable.
std::string read_text(const std::string& path);

}  // namespace refgraph
