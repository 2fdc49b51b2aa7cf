#include "refgraph/construction.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "refgraph/errors.hpp"

namespace refgraph {

NodeId yablo_node(std::size_t i) { return "x" + std::to_string(i); }

RefGraph yablo_truncation(std::size_t n) {
  if (n < 2) throw Error("yablo_truncation needs n >= 2, got " + std::to_string(n));
  RefGraph g;
  for (std::size_t i = 0; i <= n; ++i) g.add_node(yablo_node(i));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Formula> conjuncts;
    for (std::size_t j = i + 1; j <= n; ++j) {
      g.add_arrow(yablo_node(i), yablo_node(j), Sign::Negative);
      conjuncts.push_back(Formula::neg_var(yablo_node(j)));
    }
    g.set_formula(yablo_node(i), Formula::conj(std::move(conjuncts)));
  }
  return g;
}

namespace {

[[noreturn]] void reject(const BuildStep& s, const std::string& why) {
  throw StepError("cannot apply '" + to_string(s) + "': " + why);
}

void require_node(const RefGraph& g, const BuildStep& s, const NodeId& id) {
  if (!g.has_node(id)) reject(s, "unknown node '" + id + "'");
}

void append_negative_conjunct(RefGraph& g, const NodeId& from, const NodeId& to) {
  g.add_arrow(from, to, Sign::Negative);
  g.set_formula(from, *g.formula(from) & Formula::neg_var(to));
}

}  // namespace

void apply_step(BuildState& state, const BuildStep& step) {
  RefGraph g = state.graph;
  auto pending = state.pending;
  switch (step.kind) {
    case BuildStep::Kind::SeedTriangle:
      if (g.node_count() != 0) reject(step, "the graph is not empty");
      g = yablo_truncation(2);
      break;

    case BuildStep::Kind::PrepareC2: {
      require_node(g, step, step.a);
      if (pending) reject(step, "preparation at '" + pending->first + "' is still unfinished");
      if (g.has_node(step.b)) reject(step, "'" + step.b + "' is not a fresh node");
      const auto& f = g.formula(step.a);
      if (!f || !f->is_literal_conjunction()) {
        reject(step, "'" + step.a + "' has no conjunction of literals to extend");
      }
      g.add_node(step.b);
      append_negative_conjunct(g, step.a, step.b);
      pending = std::make_pair(step.a, step.b);
      break;
    }

    case BuildStep::Kind::FinishC2: {
      require_node(g, step, step.a);
      if (!pending) reject(step, "no preparation to finish");
      const auto& [knee, fresh] = *pending;
      if (step.a == fresh) reject(step, "'" + step.a + "' is the prepared sink itself");
      if (!g.is_sink(step.a)) reject(step, "'" + step.a + "' already has a formula");
      if (!g.has_arrow(knee, step.a)) {
        reject(step, "'" + step.a + "' is not a successor of the prepared node '" + knee + "'");
      }
      g.add_arrow(step.a, fresh, Sign::Negative);
      g.set_formula(step.a, Formula::neg_var(fresh));
      pending.reset();
      break;
    }

    case BuildStep::Kind::CloseC1:
      require_node(g, step, step.a);
      require_node(g, step, step.b);
      if (step.a == step.b) reject(step, "self-loop");
      if (!g.formula(step.a)) reject(step, "'" + step.a + "' has no formula");
      if (g.has_arrow(step.a, step.b)) reject(step, "arrow already present");
      if (g.reaches(step.b, step.a)) reject(step, "the arrow would close a cycle");
      append_negative_conjunct(g, step.a, step.b);
      break;
  }
  state.ledger.push_back({step, model_expressions(g)});
  state.graph = std::move(g);
  state.pending = std::move(pending);
}

BuildState inductive_build(const std::vector<BuildStep>& steps) {
  BuildState state;
  for (const auto& s : steps) apply_step(state, s);
  return state;
}

std::vector<BuildStep> canonical_script(std::size_t depth) {
  if (depth < 1) throw Error("canonical_script needs depth >= 1");
  std::vector<BuildStep> steps{BuildStep::seed()};
  for (std::size_t d = 1; d <= depth; ++d) {
    steps.push_back(BuildStep::prepare(yablo_node(d), yablo_node(d + 2)));
    steps.push_back(BuildStep::finish(yablo_node(d + 1)));
    for (std::size_t k = d; k-- > 0;) steps.push_back(BuildStep::close(yablo_node(k), yablo_node(d + 2)));
  }
  return steps;
}

std::string to_string(const BuildStep& s) {
  switch (s.kind) {
    case BuildStep::Kind::SeedTriangle:
      return "seed";
    case BuildStep::Kind::PrepareC2:
      return "prepare " + s.a + " " + s.b;
    case BuildStep::Kind::FinishC2:
      return "finish " + s.a;
    case BuildStep::Kind::CloseC1:
      return "close " + s.a + " " + s.b;
  }
  return "?";
}

BuildStep parse_step(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  auto arity = [&](std::size_t n) {
    if (words.size() != n + 1) {
      throw ParseError("'" + words[0] + "' takes " + std::to_string(n) + " node name(s)", 1, 1);
    }
  };
  if (words.empty()) throw ParseError("empty step", 1, 1);
  const std::string& kw = words[0];
  if (kw == "seed") {
    arity(0);
    return BuildStep::seed();
  }
  if (kw == "prepare") {
    arity(2);
    return BuildStep::prepare(words[1], words[2]);
  }
  if (kw == "finish") {
    arity(1);
    return BuildStep::finish(words[1]);
  }
  if (kw == "close") {
    arity(2);
    return BuildStep::close(words[1], words[2]);
  }
  throw ParseError("unknown step '" + kw + "'", 1, 1);
}

std::vector<PairRichness> richness_check(const RefGraph& g, std::size_t max_len) {
  g.validate();
  std::vector<PairRichness> out;
  for (const auto& from : g.nodes()) {
    for (const auto& to : g.descendants(from)) {
      PairRichness r{from, to};
      for (const auto& p : enumerate_paths(g, from, to, max_len)) {
        ++(path_value(p) == Sign::Positive ? r.positive_paths : r.negative_paths);
      }
      out.push_back(r);
    }
  }
  return out;
}

HeadObligations dnf_head_obligations(const Dnf& head) {
  HeadObligations out;
  std::vector<std::set<NodeId>> groups;
  for (const auto& c : head.disjuncts()) {
    std::set<NodeId> vars;
    for (const auto& l : c) vars.insert(l.atom);
    out.c1_targets.emplace_back(vars.begin(), vars.end());
    groups.push_back(std::move(vars));
  }
  // A choice function avoids a group unless some disjunct lies entirely
  // inside it, so the minimal covering groups are the minimal disjuncts.
  for (std::size_t i = 0; i < groups.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < groups.size() && minimal; ++j) {
      if (j == i) continue;
      const bool inside = std::includes(groups[i].begin(), groups[i].end(), groups[j].begin(),
                                        groups[j].end());
      if (inside && (groups[j].size() < groups[i].size() || j < i)) minimal = false;
    }
    if (minimal) out.c2_targets.emplace_back(groups[i].begin(), groups[i].end());
  }
  std::sort(out.c2_targets.begin(), out.c2_targets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });

  for (std::size_t k = 0; k < out.c1_targets.size(); ++k)
    for (const auto& v : out.c1_targets[k])
      out.obligations.push_back({v, Polarity::Pos, "disjunct " + std::to_string(k + 1) + " must be contradictory"});
  for (std::size_t k = 0; k < out.c2_targets.size(); ++k)
    for (const auto& v : out.c2_targets[k])
      out.obligations.push_back({v, Polarity::Neg, "group " + std::to_string(k + 1) + " of the negation (one group suffices)"});
  return out;
}

namespace {

std::optional<NodeId> first_block(const Path& p, const std::map<NodeId, Dnf>& exprs) {
  const Dnf universe = Dnf::verum();
  Sign prefix = Sign::Positive;
  for (const auto& a : p.arrows) {
    prefix = compose_value(prefix, a.sign);
    // Origin false: nodes reached positively must be false, negatively true.
    const Dnf& e = exprs.at(a.to);
    const bool must_be_true = prefix == Sign::Negative;
    if (must_be_true ? e.is_falsum() : e == universe) return a.to;
  }
  return std::nullopt;
}

}  // namespace

CompositionReport composition_audit(const RefGraph& g, const NodeId& origin, std::size_t max_len) {
  g.validate();
  if (!g.has_node(origin)) throw GraphError("unknown node '" + origin + "'");
  const auto exprs = model_expressions(g);
  CompositionReport report{origin, {}};
  for (const auto& end : g.descendants(origin)) {
    std::vector<AuditedPath> paths;
    for (auto& p : enumerate_paths(g, origin, end, max_len)) {
      auto block = first_block(p, exprs);
      paths.push_back({std::move(p), std::move(block)});
    }
    EndpointAudit ep{end, {}, CellSafety::Safe};
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        if (path_value(paths[i].path) == path_value(paths[j].path)) continue;
        const bool open = !paths[i].blocked_at && !paths[j].blocked_at;
        const CellSafety label = open ? CellSafety::EscapeHazard : CellSafety::Safe;
        if (open) ep.label = CellSafety::EscapeHazard;
        ep.cells.push_back({paths[i], paths[j], label});
      }
    }
    if (!ep.cells.empty()) report.endpoints.push_back(std::move(ep));
  }
  return report;
}

std::string_view to_string(CellSafety s) {
  return s == CellSafety::Safe ? "Safe" : "EscapeHazard";
}

}  // namespace refgraph
