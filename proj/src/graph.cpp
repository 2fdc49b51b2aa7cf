#include "refgraph/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "refgraph/errors.hpp"

namespace refgraph {

const RefGraph::NodeData& RefGraph::data(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GraphError("unknown node '" + id + "'");
  return it->second;
}

RefGraph::NodeData& RefGraph::data(const NodeId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GraphError("unknown node '" + id + "'");
  return it->second;
}

void RefGraph::add_node(const NodeId& id) {
  if (id.empty()) throw GraphError("node id must be nonempty");
  if (!nodes_.emplace(id, NodeData{}).second) throw GraphError("duplicate node '" + id + "'");
}

void RefGraph::add_arrow(const NodeId& from, const NodeId& to, Sign sign) {
  if (from == to) throw GraphError("self-loop at '" + from + "'");
  data(to);
  auto& succ = data(from).successors;
  if (!succ.emplace(to, sign).second) {
    throw GraphError("duplicate arrow '" + from + "' -> '" + to + "'");
  }
}

void RefGraph::remove_arrow(const NodeId& from, const NodeId& to) {
  if (data(from).successors.erase(to) == 0) {
    throw GraphError("no arrow '" + from + "' -> '" + to + "'");
  }
}

bool RefGraph::has_arrow(const NodeId& from, const NodeId& to) const {
  return data(from).successors.count(to) != 0;
}

std::optional<Sign> RefGraph::arrow_sign(const NodeId& from, const NodeId& to) const {
  const auto& succ = data(from).successors;
  auto it = succ.find(to);
  if (it == succ.end()) return std::nullopt;
  return it->second;
}

void RefGraph::set_formula(const NodeId& id, Formula f) { data(id).formula = std::move(f); }

void RefGraph::clear_formula(const NodeId& id) { data(id).formula.reset(); }

const std::optional<Formula>& RefGraph::formula(const NodeId& id) const {
  return data(id).formula;
}

Sign implied_sign(const Formula& f, const NodeId& var) {
  bool positive = false;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Formula::Kind::Literal && g.name() == var && g.positive()) positive = true;
    for (const auto& op : g.operands()) walk(op);
  };
  walk(f);
  return positive ? Sign::Positive : Sign::Negative;
}

void RefGraph::define(const NodeId& id, Formula f) {
  if (!has_node(id)) add_node(id);
  for (const auto& v : f.variables()) {
    if (!has_node(v)) add_node(v);
    add_arrow(id, v, implied_sign(f, v));
  }
  set_formula(id, std::move(f));
}

std::vector<NodeId> RefGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, d] : nodes_) out.push_back(id);
  return out;
}

std::size_t RefGraph::arrow_count() const {
  std::size_t n = 0;
  for (const auto& [id, d] : nodes_) n += d.successors.size();
  return n;
}

std::vector<Arrow> RefGraph::arrows() const {
  std::vector<Arrow> out;
  for (const auto& [id, d] : nodes_)
    for (const auto& [to, sign] : d.successors) out.push_back({id, to, sign});
  return out;
}

const std::map<NodeId, Sign>& RefGraph::successors(const NodeId& id) const {
  return data(id).successors;
}

std::vector<NodeId> RefGraph::predecessors(const NodeId& id) const {
  data(id);
  std::vector<NodeId> out;
  for (const auto& [from, d] : nodes_)
    if (d.successors.count(id)) out.push_back(from);
  return out;
}

std::vector<NodeId> RefGraph::sinks() const {
  std::vector<NodeId> out;
  for (const auto& [id, d] : nodes_)
    if (!d.formula) out.push_back(id);
  return out;
}

std::vector<NodeId> RefGraph::topological_order() const {
  std::map<NodeId, std::size_t> indegree;
  for (const auto& [id, d] : nodes_) indegree.emplace(id, 0);
  for (const auto& [id, d] : nodes_)
    for (const auto& [to, s] : d.successors) ++indegree[to];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree)
    if (deg == 0) ready.push(id);
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const auto& [to, s] : nodes_.at(id).successors)
      if (--indegree[to] == 0) ready.push(to);
  }
  if (order.size() != nodes_.size()) {
    for (const auto& [id, deg] : indegree)
      if (deg != 0) throw GraphError("directed cycle through '" + id + "'");
  }
  return order;
}

bool RefGraph::is_acyclic() const {
  try {
    topological_order();
    return true;
  } catch (const GraphError&) {
    return false;
  }
}

std::set<NodeId> RefGraph::descendants(const NodeId& id) const {
  std::set<NodeId> seen;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (const auto& [to, s] : data(cur).successors)
      if (seen.insert(to).second) stack.push_back(to);
  }
  return seen;
}

bool RefGraph::reaches(const NodeId& from, const NodeId& to) const {
  return descendants(from).count(to) != 0;
}

void RefGraph::validate() const {
  topological_order();
  for (const auto& [id, d] : nodes_) {
    if (!d.formula) {
      if (!d.successors.empty()) throw GraphError("node '" + id + "' has successors but no formula");
      continue;
    }
    const auto vars = d.formula->variables();
    for (const auto& v : vars) {
      if (!d.successors.count(v)) {
        throw GraphError("formula of '" + id + "' mentions non-successor '" + v + "'");
      }
    }
    for (const auto& [to, sign] : d.successors) {
      if (!vars.count(to)) {
        throw GraphError("successor '" + to + "' of '" + id + "' is not mentioned in its formula");
      }
    }
    if (!d.formula->is_literal_conjunction()) continue;
    std::map<NodeId, std::set<Sign>> polarity;
    const Formula& f = *d.formula;
    if (f.kind() == Formula::Kind::Literal) {
      polarity[f.name()].insert(f.sign());
    } else {
      for (const auto& op : f.operands()) polarity[op.name()].insert(op.sign());
    }
    for (const auto& [v, signs] : polarity) {
      if (signs.size() == 1 && *signs.begin() != d.successors.at(v)) {
        throw GraphError("arrow '" + id + "' -> '" + v + "' has sign " +
                         std::string(to_string(d.successors.at(v))) +
                         " but the literal in the formula has the other polarity");
      }
    }
  }
}

bool operator==(const RefGraph& a, const RefGraph& b) {
  if (a.nodes_.size() != b.nodes_.size()) return false;
  for (auto ia = a.nodes_.begin(), ib = b.nodes_.begin(); ia != a.nodes_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ia->second.successors != ib->second.successors) return false;
    const auto& fa = ia->second.formula;
    const auto& fb = ib->second.formula;
    if (fa.has_value() != fb.has_value()) return false;
    if (fa && canonicalize(*fa) != canonicalize(*fb)) return false;
  }
  return true;
}

RefGraph chain_graph(std::size_t n, Sign sign) {
  RefGraph g;
  for (std::size_t i = 0; i <= n; ++i) g.add_node("x" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId from = "x" + std::to_string(i);
    const NodeId to = "x" + std::to_string(i + 1);
    g.add_arrow(from, to, sign);
    g.set_formula(from, Formula::literal(to, sign));
  }
  return g;
}

}  // namespace refgraph
