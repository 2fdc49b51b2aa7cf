#include "refgraph/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "refgraph/cells.hpp"
#include "refgraph/conjecture.hpp"
#include "refgraph/construction.hpp"
#include "refgraph/errors.hpp"
#include "refgraph/paths.hpp"
#include "refgraph/semantics.hpp"

namespace refgraph {

namespace {

struct Options {
  std::string format = "text";
  unsigned jobs = 1;
  std::size_t max_len = kDefaultMaxPathLength;

  std::string file;
  std::vector<std::string> nodes;
  std::string polarity = "both";
  std::size_t limit = 64;
  std::vector<std::string> sets;
  std::string default_value;
  std::string from, to, sign;
  std::vector<std::string> sides;
  std::size_t n = 0;
  std::string script;
  std::size_t depth = 0;
  std::string origin = "x0";
  std::string target;
  std::size_t budget = SearchConfig{}.max_nodes_explored;
  std::size_t path_cap = SearchConfig{}.path_length_cap;
  bool require_source = false;
  std::string injection;
  std::string out;
};

/// Thrown for bad option values that CLI11 cannot see.
struct UsageError : Error {
  using Error::Error;
};

Truth3 truth_arg(const std::string& s) {
  const auto v = parse_truth3(s);
  if (!v) throw UsageError("'" + s + "' is not a truth value (T, F or xi)");
  return *v;
}

Sign sign_arg(const std::string& s) {
  const auto v = parse_sign(s);
  if (!v) throw UsageError("'" + s + "' is not a sign (+ or -)");
  return *v;
}

EnumerationLimits limits(const Options& o) { return {sink_limit_from_env(), std::max(1u, o.jobs)}; }

json assignment_json(const std::optional<SinkAssignment>& a) {
  if (!a) return nullptr;
  json out = json::object();
  for (const auto& [k, v] : *a) out[k] = v;
  return out;
}

json path_json(const Path& p) {
  return {{"nodes", p.nodes()}, {"value", to_string(path_value(p))}};
}

json status_json(const NodeId& node, const NodeStatus& s) {
  return {{"node", node},
          {"status", to_string(s.kind)},
          {"positive_witness", assignment_json(s.positive_witness)},
          {"negative_witness", assignment_json(s.negative_witness)}};
}

json escape_json(const std::optional<EscapeWitness>& w) {
  if (!w) return nullptr;
  json trace = json::array();
  for (const auto& s : w->trace) {
    trace.push_back({{"node", s.node},
                     {"value", s.value},
                     {"choice", s.choice ? json(to_string(*s.choice)) : json(nullptr)}});
  }
  return {{"assignment", assignment_json(w->assignment)}, {"trace", trace}};
}

json truth_map_json(const std::map<NodeId, Truth3>& values) {
  json out = json::object();
  for (const auto& [k, v] : values) out[k] = std::string(to_string(v));
  return out;
}

std::vector<NodeId> pick_nodes(const RefGraph& g, const std::vector<std::string>& requested) {
  if (requested.empty()) return g.nodes();
  for (const auto& id : requested)
    if (!g.has_node(id)) throw GraphError("unknown node '" + id + "'");
  return requested;
}

RefGraph load_graph(const Options& o) { return parse_refgraph(read_text(o.file)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!(f << text)) throw Error("cannot write '" + path + "'");
}

// ---- commands: each fills `result` and returns an exit code ----

int cmd_validate(const Options& o, json& result) {
  GraphDocument doc = parse_graph(read_text(o.file), false);
  try {
    if (auto* g = std::get_if<RefGraph>(&doc)) {
      g->validate();
      result = {{"valid", true},       {"kind", "refgraph"},         {"nodes", g->node_count()},
                {"arrows", g->arrow_count()}, {"sinks", g->sinks()}, {"error", nullptr}};
    } else {
      const auto& d = std::get<BareDag>(doc);
      result = {{"valid", true}, {"kind", "bare"}, {"nodes", d.node_count()}, {"arrows", d.arrow_count()},
                {"sinks", json::array()}, {"error", nullptr}};
    }
    return kExitOk;
  } catch (const GraphError& e) {
    result = {{"valid", false}, {"kind", "refgraph"}, {"nodes", 0}, {"arrows", 0}, {"sinks", json::array()},
              {"error", e.what()}};
    return kExitNegative;
  }
}

int cmd_check(const Options& o, json& result) {
  const RefGraph g = load_graph(o);
  json statuses = json::array();
  for (const auto& id : pick_nodes(g, o.nodes)) statuses.push_back(status_json(id, check_status(g, id, limits(o))));
  result = {{"statuses", statuses}};
  return kExitOk;
}

int cmd_models(const Options& o, json& result) {
  const RefGraph g = load_graph(o);
  if (o.nodes.size() != 1) throw UsageError("models needs exactly one --node");
  const NodeId node = pick_nodes(g, o.nodes).front();
  if (o.polarity != "pos" && o.polarity != "neg" && o.polarity != "both") {
    throw UsageError("--polarity must be pos, neg or both");
  }
  result = {{"node", node}, {"sinks", g.sinks()}, {"universe", std::uint64_t{1} << g.sinks().size()}};
  for (const auto& [name, pol] : {std::pair{"positive", Polarity::Pos}, std::pair{"negative", Polarity::Neg}}) {
    if (o.polarity != "both" && o.polarity != (pol == Polarity::Pos ? "pos" : "neg")) continue;
    const ModelSet m = models_of(g, node, pol, limits(o));
    json members = json::array();
    for (std::size_t k = 0; k < m.size() && k < o.limit; ++k) members.push_back(assignment_json(m.assignment(k)));
    result[name] = {{"count", m.size()}, {"members", members}, {"truncated", m.size() > o.limit}};
  }
  return kExitOk;
}

int cmd_expr(const Options& o, json& result) {
  const RefGraph g = load_graph(o);
  g.validate();
  const auto all = model_expressions(g);
  json rows = json::array();
  for (const auto& id : pick_nodes(g, o.nodes)) {
    json row = {{"node", id}};
    row.update(dnf_to_json(all.at(id)));
    rows.push_back(std::move(row));
  }
  result = {{"expressions", rows}};
  return kExitOk;
}

int cmd_eval3(const Options& o, json& result) {
  const RefGraph g = load_graph(o);
  std::map<std::string, Truth3> given;
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects NAME=VALUE, got '" + s + "'");
    given[s.substr(0, eq)] = truth_arg(s.substr(eq + 1));
  }
  std::optional<Truth3> fallback;
  if (!o.default_value.empty()) fallback = truth_arg(o.default_value);

  std::map<NodeId, Truth3> sinks;
  for (const auto& s : g.sinks()) {
    auto it = given.find(s);
    if (it != given.end()) {
      sinks[s] = it->second;
    } else if (fallback) {
      sinks[s] = *fallback;
    } else {
      throw UsageError("no value for sink '" + s + "' (use --set or --default)");
    }
  }
  FrontierValues frontier;
  for (const auto& id : g.nodes()) {
    if (!g.formula(id)) continue;
    for (const auto& tag : g.formula(id)->frontier_tags()) {
      auto it = given.find("$" + tag);
      if (it == given.end()) it = given.find(tag);
      if (it != given.end()) {
        frontier[tag] = it->second;
      } else if (fallback) {
        frontier[tag] = *fallback;
      } else {
        throw UsageError("no value for frontier leaf '$" + tag + "'");
      }
    }
  }
  result = {{"values", truth_map_json(eval3_graph(g, sinks, frontier))}};
  return kExitOk;
}

int cmd_cells(const Options& o, json& result) {
  const RefGraph g = load_graph(o);
  if (o.from.empty() || o.to.empty()) throw UsageError("cells needs --from and --to");
  const PathEnumeration en = enumerate_paths_checked(g, o.from, o.to, o.max_len);
  json paths = json::array();
  for (const auto& p : en.paths) paths.push_back(path_json(p));
  json cells = json::array();
  for (std::size_t i = 0; i < en.paths.size(); ++i)
    for (std::size_t j = i + 1; j < en.paths.size(); ++j)
      if (path_value(en.paths[i]) != path_value(en.paths[j])) cells.push_back({i, j});
  const LoopReport loop = contradiction_loop_check(en.paths);
  json contradicts = json::array();
  for (const auto& [i, j] : loop.contradicts) contradicts.push_back({i, j});
  result = {{"from", o.from},
            {"to", o.to},
            {"paths", paths},
            {"truncated", en.truncated},
            {"cells", cells},
            {"contradicts", contradicts},
            {"odd_cycle", loop.odd_cycle_witness ? json(*loop.odd_cycle_witness) : json(nullptr)}};
  return kExitOk;
}

json labels(const std::vector<VariantReport>& rows, bool (*keep)(const VariantReport&)) {
  json out = json::array();
  for (const auto& r : rows)
    if (keep(r)) out.push_back(label(r.variant));
  return out;
}

int cmd_classify_variants(const Options&, json& result) {
  const auto rows = classify_all();
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"variant", label(r.variant)},
                     {"y", to_string(knee_formula(r.variant))},
                     {"z", to_string(foot_formula(r.variant))},
                     {"c221", r.c221},
                     {"c222", r.c222},
                     {"c224", r.c224},
                     {"all_ok", r.all_ok()},
                     {"x_value", std::string(to_string(r.x_value3))},
                     {"resolved_x", to_string(r.resolved_x)}});
  }
  json audit = json::array();
  for (Sign xy : {Sign::Positive, Sign::Negative})
    for (Sign yz : {Sign::Positive, Sign::Negative})
      for (Sign xz : {Sign::Positive, Sign::Negative}) {
        const TriangleAudit a = triangle_sign_audit(xy, yz, xz);
        audit.push_back({{"xy", to_string(xy)},
                         {"yz", to_string(yz)},
                         {"xz", to_string(xz)},
                         {"verdict", to_string(a.verdict)},
                         {"reducible_by_cheating", a.reducible_by_cheating}});
      }
  result = {{"rows", table},
            {"c221_ok", labels(rows, [](const VariantReport& r) { return r.c221; })},
            {"c222_fail", labels(rows, [](const VariantReport& r) { return !r.c222; })},
            {"c224_ok", labels(rows, [](const VariantReport& r) { return r.c224; })},
            {"all_ok", labels(rows, [](const VariantReport& r) { return r.all_ok(); })},
            {"diamond", {{"full_expanded", to_string(to_dnf(diamond_head(false)))},
                         {"full", to_string(diamond_resolved_form(false))},
                         {"simplified", to_string(diamond_resolved_form(true))}}},
            {"triangle_audit", audit}};
  return kExitOk;
}

int cmd_build_yablo(const Options& o, json& result) {
  if (o.n < 2) throw UsageError("--n must be at least 2");
  const RefGraph g = yablo_truncation(o.n);
  if (!o.out.empty()) write_text(o.out, print_graph_json(g));
  result = {{"n", o.n}, {"graph", graph_to_json(g)}, {"dsl", print_graph_dsl(g)}};
  return kExitOk;
}

std::vector<BuildStep> load_script(const std::string& path) {
  const std::string text = read_text(path);
  std::vector<BuildStep> steps;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error&) {
      throw ParseError("invalid JSON script", 1, 1);
    }
    for (const auto& s : doc) {
      if (!s.is_string()) throw ParseError("script entries are strings", 1, 1);
      steps.push_back(parse_step(s.get<std::string>()));
    }
    return steps;
  }
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      steps.push_back(parse_step(line));
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      throw ParseError(msg.substr(msg.find(": ") + 2), line_no, 1);
    }
  }
  return steps;
}

int cmd_replay(const Options& o, json& result) {
  if (o.script.empty() == (o.depth == 0)) throw UsageError("give exactly one of --script and --depth");
  const auto steps = o.depth ? canonical_script(o.depth) : load_script(o.script);
  const BuildState state = inductive_build(steps);
  json ledger = json::array();
  for (std::size_t k = 0; k < state.ledger.size(); ++k) {
    json exprs = json::object();
    for (const auto& [id, d] : state.ledger[k].expressions) exprs[id] = to_string(d);
    ledger.push_back({{"index", k + 1}, {"step", to_string(state.ledger[k].step)}, {"expressions", exprs}});
  }
  // Compare with the truncation of the same size when the nodes are x0..xm.
  json equals = nullptr;
  const std::size_t m = state.graph.node_count();
  if (m >= 3) {
    bool names = true;
    for (std::size_t i = 0; i < m; ++i) names = names && state.graph.has_node(yablo_node(i));
    if (names) equals = state.graph == yablo_truncation(m - 1);
  }
  result = {{"steps", ledger}, {"final_graph", graph_to_json(state.graph)}, {"equals_truncation", equals}};
  return kExitOk;
}

Insertion parse_side(const std::string& s) {
  if (s.size() != 3 || (s[2] != '+' && s[2] != '-')) throw UsageError("--side expects xy+, xz-, yz+, ...");
  const std::string side = s.substr(0, 2);
  const Sign sign = s[2] == '+' ? Sign::Positive : Sign::Negative;
  if (side == "xy") return {TriangleSide::XY, sign};
  if (side == "xz") return {TriangleSide::XZ, sign};
  if (side == "yz") return {TriangleSide::YZ, sign};
  throw UsageError("unknown triangle side '" + side + "'");
}

int cmd_insert(const Options& o, json& result) {
  if (!o.sides.empty()) {
    if (!o.file.empty()) throw UsageError("--side works on the built-in triangle; drop the file");
    std::vector<Insertion> ins;
    for (const auto& s : o.sides) ins.push_back(parse_side(s));
    const InsertionReport r = insertion_effect(ins);
    result = {{"mode", "triangle"},
              {"insertions", o.sides},
              {"effect", to_string(r.effect)},
              {"expression", dnf_to_json(r.expression)},
              {"raw", to_string(r.raw)},
              {"escape", escape_json(r.escape)},
              {"graph", graph_to_json(r.graph)}};
    return kExitOk;
  }
  if (o.file.empty() || o.from.empty() || o.to.empty() || o.sign.empty()) {
    throw UsageError("insert-tautology needs FILE --from --to --sign, or --side");
  }
  const RefGraph g = load_graph(o);
  const NodeId name = inserted_node_name(g, o.from, o.to);
  const RefGraph out = insert_tautology(g, o.from, o.to, sign_arg(o.sign));
  result = {{"mode", "file"},
            {"inserted", name},
            {"expression", dnf_to_json(node_model_expression(out, o.from))},
            {"graph", graph_to_json(out)}};
  return kExitOk;
}

json audited_json(const AuditedPath& p) {
  json j = path_json(p.path);
  j["blocked_at"] = p.blocked_at ? json(*p.blocked_at) : json(nullptr);
  return j;
}

int cmd_audit(const Options& o, json& result) {
  const RefGraph g = load_graph(o);
  const CompositionReport r = composition_audit(g, o.origin, o.max_len);
  json endpoints = json::array();
  for (const auto& ep : r.endpoints) {
    json cells = json::array();
    for (const auto& c : ep.cells) {
      cells.push_back({{"sigma", audited_json(c.sigma)},
                       {"sigma_prime", audited_json(c.sigma_prime)},
                       {"label", to_string(c.label)}});
    }
    endpoints.push_back({{"endpoint", ep.endpoint}, {"label", to_string(ep.label)}, {"cells", cells}});
  }
  result = {{"origin", r.origin}, {"endpoints", endpoints}};
  return kExitOk;
}

SearchConfig search_config(const Options& o) {
  SearchConfig cfg;
  cfg.max_nodes_explored = o.budget;
  cfg.path_length_cap = o.path_cap;
  cfg.require_source = o.require_source;
  cfg.jobs = std::max(1u, o.jobs);
  return cfg;
}

int outcome_code(SearchOutcome s) {
  return s == SearchOutcome::Found ? kExitOk : s == SearchOutcome::Absent ? kExitNegative : kExitInconclusive;
}

int cmd_inject(const Options& o, json& result) {
  if (o.n < 1) throw UsageError("--n must be at least 1");
  const BareDag target = parse_bare(read_text(o.target));
  const SearchResult r = find_injection(target, o.n, search_config(o));
  json check = nullptr;
  if (r.injection) {
    const InjectionCheck c = check_injection(target, o.n, *r.injection);
    check = {{"ok", c.ok}, {"detail", c.detail}};
  }
  result = {{"n", o.n},
            {"outcome", to_string(r.outcome)},
            {"explored", r.explored},
            {"root_is_source", r.root_is_source},
            {"require_source", o.require_source},
            {"note", r.note},
            {"injection", r.injection ? injection_to_json(*r.injection) : json(nullptr)},
            {"check", check}};
  return outcome_code(r.outcome);
}

int cmd_extend(const Options& o, json& result) {
  const BareDag target = parse_bare(read_text(o.target));
  std::optional<Injection> inj;
  std::string outcome = "given";
  if (!o.injection.empty()) {
    json doc;
    try {
      doc = json::parse(read_text(o.injection));
    } catch (const json::parse_error&) {
      throw ParseError("invalid injection JSON", 1, 1);
    }
    inj = injection_from_json(doc.contains("injection") ? doc["injection"] : doc);
  } else {
    if (o.n < 1) throw UsageError("--n must be at least 1 (or pass --injection)");
    const SearchResult r = find_injection(target, o.n, search_config(o));
    outcome = to_string(r.outcome);
    if (!r.injection) {
      result = {{"outcome", outcome}, {"injection", nullptr}, {"graph", nullptr}, {"verification", nullptr}};
      return outcome_code(r.outcome);
    }
    inj = r.injection;
  }
  const RefGraph g = extend_interpretation(target, *inj);
  const ExtensionReport rep = verify_extension(g, *inj);
  result = {{"outcome", outcome},
            {"injection", injection_to_json(*inj)},
            {"graph", graph_to_json(g)},
            {"verification",
             {{"ok", rep.ok()},
              {"image_all_xi", rep.image_all_xi},
              {"non_image_t_or_xi", rep.non_image_t_or_xi},
              {"c1_at_root", rep.c1_at_root ? json(*rep.c1_at_root) : json(nullptr)},
              {"values", truth_map_json(rep.values)}}}};
  return rep.ok() ? kExitOk : kExitNegative;
}

int cmd_report(const Options& o, json& result) {
  const RefGraph g = load_graph(o);
  const auto exprs = model_expressions(g);
  json nodes = json::array();
  for (const auto& id : g.nodes()) {
    const NodeStatus s = check_status(g, id, limits(o));
    json row = {{"node", id},
                {"formula", g.formula(id) ? json(to_string(canonicalize(*g.formula(id)))) : json(nullptr)},
                {"status", to_string(s.kind)},
                {"expression", to_string(exprs.at(id))}};
    nodes.push_back(std::move(row));
  }
  json richness = json::array();
  for (const auto& r : richness_check(g, o.max_len)) {
    richness.push_back({{"from", r.from},
                        {"to", r.to},
                        {"positive", r.positive_paths},
                        {"negative", r.negative_paths},
                        {"unique_path", r.unique_path()},
                        {"lacks_negative", r.lacks_negative()}});
  }
  json heads = json::array();
  for (const auto& id : g.nodes()) {
    if (!g.formula(id) || g.successors(id).empty()) continue;
    const HeadObligations h = dnf_head_obligations(simplify_dnf(to_dnf(*g.formula(id))));
    heads.push_back({{"node", id}, {"c1_targets", h.c1_targets}, {"c2_targets", h.c2_targets}});
  }
  result = {{"summary",
             {{"nodes", g.node_count()}, {"arrows", g.arrow_count()}, {"sinks", g.sinks()}}},
            {"nodes", nodes},
            {"richness", richness},
            {"obligations", heads}};
  return kExitOk;
}

// ---- text rendering ----

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

bool is_table(const json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const json& row) { return row.is_object(); });
}

std::string cell_text(const json& v) { return is_scalar(v) ? scalar_text(v) : v.dump(); }

void render_table(const json& rows, const std::string& pad, std::string& out) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (auto it = row.begin(); it != row.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      line.push_back(row.contains(cols[k]) ? cell_text(row[cols[k]]) : "");
      width[k] = std::max(width[k], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s = pad;
    for (std::size_t k = 0; k < line.size(); ++k) {
      s += line[k];
      if (k + 1 < line.size()) s += std::string(width[k] - line[k].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out += s + "\n";
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

void render_value(const json& v, const std::string& pad, std::string& out) {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& x = it.value();
    if (is_scalar(x)) {
      const std::string s = scalar_text(x);
      if (s.find('\n') == std::string::npos) {
        out += pad + it.key() + ": " + s + "\n";
      } else {
        out += pad + it.key() + ":\n";
        std::istringstream in(s);
        for (std::string line; std::getline(in, line);) out += pad + "  " + line + "\n";
      }
    } else if (is_table(x)) {
      out += pad + it.key() + ":\n";
      render_table(x, pad + "  ", out);
    } else if (x.is_array()) {
      std::string items;
      for (const auto& e : x) items += (items.empty() ? "" : ", ") + cell_text(e);
      out += pad + it.key() + ": [" + items + "]\n";
    } else {
      out += pad + it.key() + ":\n";
      render_value(x, pad + "  ", out);
    }
  }
}

}  // namespace

std::string render_text(const json& envelope) {
  std::string out;
  if (envelope.contains("error")) {
    out += "error: " + envelope["error"].value("message", std::string("unknown error")) + "\n";
  } else if (envelope.contains("result")) {
    render_value(envelope["result"], "", out);
  }
  return out;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Analysis of reference graphs: contradictory cells, model sets, Yablo constructions."};
  app.name("refgraph");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", o.jobs, "Worker threads for enumeration and search")->check(CLI::Range(1u, 256u));
  app.add_option("--max-len", o.max_len, "Longest path (in arrows) to enumerate")->check(CLI::PositiveNumber);

  auto file_cmd = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "Graph file (JSON or DSL, - for stdin)")->required();
    return c;
  };

  file_cmd("validate", "Parse and check the graph invariants");
  file_cmd("check", "C1/C2 status per node")->add_option("--node", o.nodes, "Nodes to check (default all)");
  {
    CLI::App* c = file_cmd("models", "Sink assignments making a node true or false");
    c->add_option("--node", o.nodes, "Node")->required();
    c->add_option("--polarity", o.polarity, "pos, neg or both");
    c->add_option("--limit", o.limit, "Most members listed per polarity");
  }
  file_cmd("expr", "Symbolic model set per node")->add_option("--node", o.nodes, "Nodes (default all)");
  {
    CLI::App* c = file_cmd("eval3", "Three-valued propagation");
    c->add_option("--set", o.sets, "NAME=VALUE for a sink or a frontier tag ($tag)");
    c->add_option("--default", o.default_value, "Value for sinks and tags not set");
  }
  {
    CLI::App* c = file_cmd("cells", "Paths, contradictory cells and odd contradiction loops between two nodes");
    c->add_option("--from", o.from)->required();
    c->add_option("--to", o.to)->required();
  }
  app.add_subcommand("classify-variants", "The 18 triangle variants and the triangle sign audit");
  {
    CLI::App* c = app.add_subcommand("build-yablo", "Yablo truncation x0..xn");
    c->add_option("--n", o.n, "n >= 2")->required();
    c->add_option("--out", o.out, "Also write the graph document to this file");
  }
  {
    CLI::App* c = app.add_subcommand("replay-construction", "Replay a construction script with its ledger");
    c->add_option("--script", o.script, "Script file (one step per line, or a JSON array)");
    c->add_option("--depth", o.depth, "Replay the canonical script of this depth");
  }
  {
    CLI::App* c = app.add_subcommand("insert-tautology", "Insert v | !v into an arrow");
    c->add_option("file", o.file, "Graph file (file mode)");
    c->add_option("--from", o.from);
    c->add_option("--to", o.to);
    c->add_option("--sign", o.sign, "Literal sign of the new arrow (+ or -)");
    c->add_option("--side", o.sides, "Triangle mode: xy+, xz-, yz+, ... (repeatable)");
  }
  {
    CLI::App* c = file_cmd("audit-composition", "Safe / EscapeHazard label per contradictory cell");
    c->add_option("--origin", o.origin, "Origin node (default x0)");
  }
  auto search_opts = [&](CLI::App* c) {
    c->add_option("--target", o.target, "Target DAG file")->required();
    c->add_option("--n", o.n, "Size of the Yablo truncation to embed");
    c->add_option("--budget", o.budget, "Search nodes per image of x0")->check(CLI::PositiveNumber);
    c->add_option("--path-cap", o.path_cap, "Longest image path")->check(CLI::PositiveNumber);
    c->add_flag("--require-source", o.require_source, "Image of x0 must be a source");
  };
  search_opts(app.add_subcommand("inject", "Search an injection of a Yablo truncation"));
  {
    CLI::App* c = app.add_subcommand("extend", "Interpret the whole target and check xi-propagation");
    search_opts(c);
    c->add_option("--injection", o.injection, "Injection JSON instead of searching");
  }
  file_cmd("report", "Statuses, model sets, richness and head obligations");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "refgraph: " << e.what() << "\n";
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  json echo = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto values = opt->results();
    const std::string key = opt->get_name().substr(opt->get_name().find_first_not_of('-'));
    echo[key] = values.size() == 1 ? json(values.front()) : json(values);
  }

  json envelope = {{"command", command}, {"args", echo}};
  int code = kExitOk;
  json result;
  try {
    if (command == "validate") code = cmd_validate(o, result);
    else if (command == "check") code = cmd_check(o, result);
    else if (command == "models") code = cmd_models(o, result);
    else if (command == "expr") code = cmd_expr(o, result);
    else if (command == "eval3") code = cmd_eval3(o, result);
    else if (command == "cells") code = cmd_cells(o, result);
    else if (command == "classify-variants") code = cmd_classify_variants(o, result);
    else if (command == "build-yablo") code = cmd_build_yablo(o, result);
    else if (command == "replay-construction") code = cmd_replay(o, result);
    else if (command == "insert-tautology") code = cmd_insert(o, result);
    else if (command == "audit-composition") code = cmd_audit(o, result);
    else if (command == "inject") code = cmd_inject(o, result);
    else if (command == "extend") code = cmd_extend(o, result);
    else code = cmd_report(o, result);
    envelope["result"] = std::move(result);
  } catch (const ParseError& e) {
    code = kExitUsage;
    envelope["error"] = {{"kind", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
  } catch (const LimitError& e) {
    code = kExitInconclusive;
    envelope["error"] = {{"kind", "limit"}, {"message", e.what()}};
  } catch (const UsageError& e) {
    code = kExitUsage;
    envelope["error"] = {{"kind", "usage"}, {"message", e.what()}};
  } catch (const Error& e) {
    code = kExitUsage;
    envelope["error"] = {{"kind", "input"}, {"message", e.what()}};
  } catch (const std::invalid_argument& e) {
    code = kExitUsage;
    envelope["error"] = {{"kind", "usage"}, {"message", e.what()}};
  }
  envelope["exit_code"] = code;

  if (o.format == "json") {
    out << envelope.dump(2) << "\n";
  } else {
    out << render_text(envelope);
  }
  return code;
}

}  // namespace refgraph
