#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refgraph/formula.hpp"
#include "refgraph/sign.hpp"

namespace refgraph {

struct Arrow {
  NodeId from;
  NodeId to;
  Sign sign = Sign::Negative;

  friend auto operator<=>(const Arrow&, const Arrow&) = default;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite acyclic reference graph: nodes stand for propositional variables,
/// a non-sink node carries a formula over exactly its successors.
///
/// Mutators keep the local invariants (known endpoints, no self-loops, one
/// arrow per ordered pair). Global invariants (acyclicity, formula/successor
/// agreement) are checked by validate(), which analyses call on entry.
/// Nodes and successors iterate in id order.
class RefGraph {
 public:
  void add_node(const NodeId& id);
  bool has_node(const NodeId& id) const { return nodes_.count(id) != 0; }

  /// Adds `from -> to`. Throws GraphError on unknown endpoints, self-loops or duplicates.
  void add_arrow(const NodeId& from, const NodeId& to, Sign sign);
  void remove_arrow(const NodeId& from, const NodeId& to);
  bool has_arrow(const NodeId& from, const NodeId& to) const;
  std::optional<Sign> arrow_sign(const NodeId& from, const NodeId& to) const;

  void set_formula(const NodeId& id, Formula f);
  void clear_formula(const NodeId& id);
  const std::optional<Formula>& formula(const NodeId& id) const;

  /// Adds `id` and the variables of `f` when missing, an arrow to every
  /// variable and attaches `f`. An arrow is negative iff the variable occurs
  /// only negatively.
  void define(const NodeId& id, Formula f);

  std::vector<NodeId> nodes() const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arrow_count() const;
  std::vector<Arrow> arrows() const;
  const std::map<NodeId, Sign>& successors(const NodeId& id) const;
  std::vector<NodeId> predecessors(const NodeId& id) const;

  /// Nodes without a formula: the free variables of the equation system.
  std::vector<NodeId> sinks() const;
  bool is_sink(const NodeId& id) const { return !formula(id).has_value(); }

  /// Throws GraphError describing the first violated invariant.
  void validate() const;
  bool is_acyclic() const;

  /// Kahn order with ties broken by id; sources first. Throws on a cycle.
  std::vector<NodeId> topological_order() const;

  /// Nodes reachable from `id` through one or more arrows.
  std::set<NodeId> descendants(const NodeId& id) const;
  bool reaches(const NodeId& from, const NodeId& to) const;

  /// Same nodes, arrows and formulas (formulas compared after canonicalize()).
  friend bool operator==(const RefGraph& a, const RefGraph& b);

 private:
  struct NodeData {
    std::optional<Formula> formula;
    std::map<NodeId, Sign> successors;
  };

  const NodeData& data(const NodeId& id) const;
  NodeData& data(const NodeId& id);

  std::map<NodeId, NodeData> nodes_;
};

/// Polarity the formula implies for an arrow to `var`: negative iff every
/// occurrence of `var` is negated.
Sign implied_sign(const Formula& f, const NodeId& var);

/// Chain `x0 -> x1 -> ... -> xn` with conjunction formulas of one literal.
RefGraph chain_graph(std::size_t n, Sign sign = Sign::Negative);

}  // namespace refgraph
