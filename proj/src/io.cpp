#include "refgraph/io.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "refgraph/errors.hpp"

namespace refgraph {

json formula_to_json(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Literal:
    case Formula::Kind::Frontier: {
      json leaf = {{f.kind() == Formula::Kind::Literal ? "var" : "xi", f.name()}};
      return f.positive() ? leaf : json{{"not", leaf}};
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      json ops = json::array();
      const Formula c = canonicalize(f);
      for (const auto& op : c.operands()) ops.push_back(formula_to_json(op));
      return {{f.kind() == Formula::Kind::And ? "and" : "or", ops}};
    }
  }
  return nullptr;
}

namespace {

[[noreturn]] void bad_json(const std::string& what) { throw ParseError(what, 1, 1); }

const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_json(std::string("missing key '") + key + "'");
  return *it;
}

std::string string_member(const json& obj, const char* key) {
  const json& v = member(obj, key);
  if (!v.is_string()) bad_json(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const char* what) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) bad_json("unexpected key '" + it.key() + "' in " + what);
  }
}

Sign sign_of(const json& j) {
  if (!j.is_string()) bad_json("arrow sign must be \"+\" or \"-\"");
  const auto s = parse_sign(j.get<std::string>());
  if (!s) bad_json("arrow sign must be \"+\" or \"-\"");
  return *s;
}

}  // namespace

Formula formula_from_json(const json& j) {
  if (j.is_boolean()) return Formula::constant(j.get<bool>());
  if (!j.is_object() || j.size() != 1) bad_json("a formula is true, false or a one-key object");
  const auto& [key, value] = *j.items().begin();
  if (key == "var" || key == "xi") {
    if (!value.is_string() || value.get<std::string>().empty()) bad_json("'" + key + "' needs a non-empty string");
    return key == "var" ? Formula::var(value.get<std::string>()) : Formula::frontier(value.get<std::string>());
  }
  if (key == "not") return negate(formula_from_json(value));
  if (key == "and" || key == "or") {
    if (!value.is_array() || value.empty()) bad_json("'" + key + "' needs a non-empty array");
    std::vector<Formula> ops;
    for (const auto& op : value) ops.push_back(formula_from_json(op));
    return key == "and" ? Formula::conj(std::move(ops)) : Formula::disj(std::move(ops));
  }
  bad_json("unknown formula key '" + key + "'");
}

json graph_to_json(const RefGraph& g) {
  json nodes = json::array();
  for (const auto& id : g.nodes()) {
    json n = {{"id", id}};
    if (const auto& f = g.formula(id)) n["formula"] = formula_to_json(*f);
    nodes.push_back(std::move(n));
  }
  json arrows = json::array();
  for (const auto& a : g.arrows()) arrows.push_back({{"from", a.from}, {"to", a.to}, {"sign", to_string(a.sign)}});
  return {{"version", kDocumentVersion}, {"kind", "refgraph"}, {"nodes", nodes}, {"arrows", arrows}};
}

json dag_to_json(const BareDag& d) {
  json nodes = json::array();
  for (const auto& id : d.nodes()) nodes.push_back({{"id", id}});
  json arrows = json::array();
  for (const auto& [from, to] : d.arrows()) arrows.push_back({{"from", from}, {"to", to}});
  return {{"version", kDocumentVersion}, {"kind", "bare"}, {"nodes", nodes}, {"arrows", arrows}};
}

json dnf_to_json(const Dnf& d) {
  json disjuncts = json::array();
  for (const auto& c : d.disjuncts()) {
    json lits = json::array();
    for (const auto& l : c) lits.push_back(to_string(l));
    disjuncts.push_back(std::move(lits));
  }
  return {{"text", to_string(d)},
          {"disjuncts", disjuncts},
          {"empty", d.is_falsum()},
          {"universal", d == Dnf::verum()}};
}

namespace {

GraphDocument graph_from_json(const json& doc, bool validate) {
  if (!doc.is_object()) bad_json("a graph document is a JSON object");
  only_keys(doc, {"version", "kind", "nodes", "arrows"}, "graph document");
  const json& version = member(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kDocumentVersion) {
    bad_json("unsupported version (expected " + std::to_string(kDocumentVersion) + ")");
  }
  const std::string kind = doc.contains("kind") ? string_member(doc, "kind") : "refgraph";
  if (kind != "refgraph" && kind != "bare") bad_json("kind must be \"refgraph\" or \"bare\"");
  const json& nodes = member(doc, "nodes");
  const json& arrows = member(doc, "arrows");
  if (!nodes.is_array() || !arrows.is_array()) bad_json("'nodes' and 'arrows' must be arrays");

  if (kind == "bare") {
    BareDag d;
    for (const auto& n : nodes) {
      if (!n.is_object()) bad_json("node entries are objects");
      only_keys(n, {"id"}, "bare node");
      d.add_node(string_member(n, "id"));
    }
    for (const auto& a : arrows) {
      if (!a.is_object()) bad_json("arrow entries are objects");
      only_keys(a, {"from", "to"}, "bare arrow");
      d.add_arrow(string_member(a, "from"), string_member(a, "to"));
    }
    return d;
  }

  RefGraph g;
  std::vector<std::pair<NodeId, Formula>> formulas;
  for (const auto& n : nodes) {
    if (!n.is_object()) bad_json("node entries are objects");
    only_keys(n, {"id", "formula"}, "node");
    const std::string id = string_member(n, "id");
    if (g.has_node(id)) throw GraphError("duplicate node '" + id + "'");
    g.add_node(id);
    if (n.contains("formula")) formulas.emplace_back(id, formula_from_json(n["formula"]));
  }
  for (const auto& a : arrows) {
    if (!a.is_object()) bad_json("arrow entries are objects");
    only_keys(a, {"from", "to", "sign"}, "arrow");
    if (!a.contains("sign")) bad_json("arrows of a refgraph document need a sign");
    g.add_arrow(string_member(a, "from"), string_member(a, "to"), sign_of(a["sign"]));
  }
  for (auto& [id, f] : formulas) g.set_formula(id, std::move(f));
  if (validate) g.validate();
  return g;
}

// ---- DSL ----

enum class Tok : unsigned char { Ident, Tag, Eq, And, Or, Not, LParen, RParen, ArrowPos, ArrowNeg, ArrowBare, Sep, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    const std::size_t l = line, k = col;
    if (c == '\n') {
      out.push_back({Tok::Sep, "\n", l, k});
      ++i;
      ++line;
      col = 1;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (c == ';') {
      out.push_back({Tok::Sep, ";", l, k});
      advance(1);
    } else if (c == '-' && i + 1 < src.size() && (src[i + 1] == '>' || src[i + 1] == '!' || src[i + 1] == '-')) {
      const char d = src[i + 1];
      out.push_back({d == '>' ? Tok::ArrowPos : d == '!' ? Tok::ArrowNeg : Tok::ArrowBare,
                     std::string(src.substr(i, 2)), l, k});
      advance(2);
    } else if (c == '$') {
      std::size_t j = i + 1;
      while (j < src.size() && (ident_char(src[j]) || src[j] == ':')) ++j;
      if (j == i + 1) throw ParseError("'$' must be followed by a tag", l, k);
      out.push_back({Tok::Tag, std::string(src.substr(i + 1, j - i - 1)), l, k});
      advance(j - i);
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, k});
      advance(j - i);
    } else {
      static const std::map<char, Tok> single{{'=', Tok::Eq},     {'&', Tok::And},    {'|', Tok::Or},
                                               {'!', Tok::Not},    {'(', Tok::LParen}, {')', Tok::RParen}};
      auto it = single.find(c);
      if (it == single.end()) throw ParseError(std::string("unexpected character '") + c + "'", l, k);
      out.push_back({it->second, std::string(1, c), l, k});
      advance(1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : t.kind == Tok::Sep ? "end of statement" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.line, t.column);
  }

  Formula formula() {
    std::vector<Formula> ops{conjunction()};
    while (at(Tok::Or)) {
      take();
      ops.push_back(conjunction());
    }
    return Formula::disj(std::move(ops));
  }

 private:
  Formula conjunction() {
    std::vector<Formula> ops{unary()};
    while (at(Tok::And)) {
      take();
      ops.push_back(unary());
    }
    return Formula::conj(std::move(ops));
  }

  Formula unary() {
    if (at(Tok::Not)) {
      take();
      return negate(unary());
    }
    if (at(Tok::LParen)) {
      take();
      Formula f = formula();
      if (!at(Tok::RParen)) fail("expected ')'");
      take();
      return f;
    }
    if (at(Tok::Tag)) return Formula::frontier(take().text);
    if (at(Tok::Ident)) {
      const std::string& name = take().text;
      if (name == "true") return Formula::top();
      if (name == "false") return Formula::bottom();
      return Formula::var(name);
    }
    fail("expected a variable, '$tag', '!', '(', true or false");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct ArrowStmt {
  NodeId from, to;
  Tok kind;
  std::size_t line, column;
};

GraphDocument graph_from_dsl(std::string_view text, bool validate) {
  Parser p(lex(text));
  std::vector<NodeId> declared;
  std::map<NodeId, Formula> defs;
  std::vector<NodeId> def_order;
  std::vector<ArrowStmt> arrows;

  while (!p.at(Tok::End)) {
    if (p.at(Tok::Sep)) {
      p.take();
      continue;
    }
    if (!p.at(Tok::Ident)) p.fail("expected a node id");
    const Token head = p.take();
    if (head.text == "true" || head.text == "false") {
      throw ParseError("'" + head.text + "' is reserved", head.line, head.column);
    }
    if (p.at(Tok::Eq)) {
      p.take();
      Formula f = p.formula();
      if (defs.count(head.text)) throw ParseError("second formula for '" + head.text + "'", head.line, head.column);
      defs.emplace(head.text, std::move(f));
      def_order.push_back(head.text);
    } else if (p.at(Tok::ArrowPos) || p.at(Tok::ArrowNeg) || p.at(Tok::ArrowBare)) {
      const Tok kind = p.take().kind;
      if (!p.at(Tok::Ident)) p.fail("expected the arrow's target");
      arrows.push_back({head.text, p.take().text, kind, head.line, head.column});
    } else {
      declared.push_back(head.text);
    }
    if (!p.at(Tok::Sep) && !p.at(Tok::End)) p.fail("expected end of statement");
  }

  auto located = [](const ArrowStmt& a, const GraphError& e) {
    return GraphError(std::to_string(a.line) + ":" + std::to_string(a.column) + ": " + e.what());
  };

  const bool bare = std::any_of(arrows.begin(), arrows.end(), [](const ArrowStmt& a) { return a.kind == Tok::ArrowBare; });
  if (bare) {
    for (const auto& a : arrows) {
      if (a.kind != Tok::ArrowBare) throw ParseError("signed arrow in a bare document", a.line, a.column);
    }
    if (!defs.empty()) throw ParseError("formula in a bare document (arrows written '--')", 1, 1);
    BareDag d;
    for (const auto& id : declared) d.add_node(id);
    for (const auto& a : arrows) {
      d.add_node(a.from);
      d.add_node(a.to);
    }
    for (const auto& a : arrows) {
      try {
        d.add_arrow(a.from, a.to);
      } catch (const GraphError& e) {
        throw located(a, e);
      }
    }
    return d;
  }

  RefGraph g;
  auto ensure = [&](const NodeId& id) {
    if (!g.has_node(id)) g.add_node(id);
  };
  for (const auto& id : declared) ensure(id);
  for (const auto& a : arrows) {
    ensure(a.from);
    ensure(a.to);
  }
  for (const auto& id : def_order) {
    ensure(id);
    for (const auto& v : defs.at(id).variables()) ensure(v);
  }
  for (const auto& a : arrows) {
    try {
      g.add_arrow(a.from, a.to, a.kind == Tok::ArrowPos ? Sign::Positive : Sign::Negative);
    } catch (const GraphError& e) {
      throw located(a, e);
    }
  }
  for (const auto& id : def_order) {
    const Formula& f = defs.at(id);
    for (const auto& v : f.variables())
      if (!g.has_arrow(id, v) && v != id) g.add_arrow(id, v, implied_sign(f, v));
    g.set_formula(id, f);
  }
  // Nodes given only by arrows are conjunctions of their signed literals.
  for (const auto& id : g.nodes()) {
    if (defs.count(id) || g.successors(id).empty()) continue;
    std::vector<Formula> lits;
    for (const auto& [to, s] : g.successors(id)) lits.push_back(Formula::literal(to, s));
    g.set_formula(id, Formula::conj(std::move(lits)));
  }
  if (validate) g.validate();
  return g;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

GraphDocument parse_graph(std::string_view text, bool validate) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      const auto [l, c] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
      throw ParseError("invalid JSON", l, c);
    }
    return graph_from_json(doc, validate);
  }
  return graph_from_dsl(text, validate);
}

RefGraph parse_refgraph(std::string_view text, bool validate) {
  GraphDocument doc = parse_graph(text, validate);
  if (auto* g = std::get_if<RefGraph>(&doc)) return std::move(*g);
  throw ParseError("expected a signed reference graph, got a bare DAG", 1, 1);
}

BareDag parse_bare(std::string_view text) {
  GraphDocument doc = parse_graph(text, false);
  if (auto* d = std::get_if<BareDag>(&doc)) return std::move(*d);
  const RefGraph& g = std::get<RefGraph>(doc);
  if (!g.is_acyclic()) throw GraphError("the graph has a cycle");
  return BareDag::from_graph(g);
}

Formula parse_formula(std::string_view text) {
  Parser p(lex(text));
  while (p.at(Tok::Sep)) p.take();
  Formula f = p.formula();
  while (p.at(Tok::Sep)) p.take();
  if (!p.at(Tok::End)) p.fail("expected end of formula");
  return f;
}

std::string print_graph_json(const RefGraph& g) { return graph_to_json(g).dump(2) + "\n"; }
std::string print_dag_json(const BareDag& d) { return dag_to_json(d).dump(2) + "\n"; }

std::string print_graph_dsl(const RefGraph& g) {
  std::string out;
  for (const auto& id : g.nodes()) {
    out += id;
    if (const auto& f = g.formula(id)) out += " = " + to_string(canonicalize(*f));
    out += "\n";
  }
  return out;
}

json injection_to_json(const Injection& inj) {
  json paths = json::array();
  for (const auto& [ij, nodes] : inj.paths) paths.push_back({{"i", ij.first}, {"j", ij.second}, {"nodes", nodes}});
  json valuation = json::array();
  for (const auto& [a, s] : inj.valuation) valuation.push_back({{"from", a.first}, {"to", a.second}, {"sign", to_string(s)}});
  return {{"mu", inj.mu}, {"paths", paths}, {"valuation", valuation}};
}

Injection injection_from_json(const json& j) {
  if (!j.is_object()) bad_json("an injection is a JSON object");
  Injection inj;
  for (const auto& m : member(j, "mu")) {
    if (!m.is_string()) bad_json("'mu' holds node ids");
    inj.mu.push_back(m.get<std::string>());
  }
  for (const auto& p : member(j, "paths")) {
    const json& i = member(p, "i");
    const json& k = member(p, "j");
    if (!i.is_number_unsigned() || !k.is_number_unsigned()) bad_json("path indices are non-negative integers");
    std::vector<NodeId> nodes;
    for (const auto& n : member(p, "nodes")) {
      if (!n.is_string()) bad_json("path nodes are ids");
      nodes.push_back(n.get<std::string>());
    }
    inj.paths[{i.get<std::size_t>(), k.get<std::size_t>()}] = std::move(nodes);
  }
  for (const auto& v : member(j, "valuation")) {
    inj.valuation[{string_member(v, "from"), string_member(v, "to")}] = sign_of(member(v, "sign"));
  }
  return inj;
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace refgraph
