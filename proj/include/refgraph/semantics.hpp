#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "refgraph/dnf.hpp"
#include "refgraph/graph.hpp"
#include "refgraph/truth3.hpp"

namespace refgraph {

inline constexpr std::size_t kDefaultSinkLimit = 24;

struct EnumerationLimits {
  std::size_t max_sinks = kDefaultSinkLimit;
  /// Worker threads for sink enumeration; shards are merged in order.
  unsigned jobs = 1;
};

/// kDefaultSinkLimit unless REFGRAPH_SINK_LIMIT holds a positive integer.
std::size_t sink_limit_from_env();

enum class Polarity : unsigned char { Pos, Neg };

using SinkAssignment = std::map<NodeId, bool>;

/// Sink assignments under which a node takes a given value. Member k is a
/// bit mask over `sinks` (bit i set means sinks[i] is true), sorted ascending.
struct ModelSet {
  std::vector<NodeId> sinks;
  std::vector<std::uint64_t> members;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
  std::uint64_t universe_size() const { return std::uint64_t{1} << sinks.size(); }
  SinkAssignment assignment(std::size_t k) const;
};

/// Classical value of every node under `sinks` (which must cover every sink).
std::map<NodeId, bool> propagate(const RefGraph& g, const SinkAssignment& sinks);

/// Enumerates every sink assignment, propagates it through the graph and
/// keeps those where `node` is true (Pos) or false (Neg).
ModelSet models_of(const RefGraph& g, const NodeId& node, Polarity polarity,
                   const EnumerationLimits& limits = {});

/// Symbolic model set of `node`: its formula with every node substituted
/// bottom-up, as a Blake-canonical DNF over sink literals. falsum encodes
/// the empty set, verum the universe.
Dnf node_model_expression(const RefGraph& g, const NodeId& node);

/// node_model_expression for every node at once.
std::map<NodeId, Dnf> model_expressions(const RefGraph& g);

enum class StatusKind : unsigned char { C1Holds, C2Holds, Open };

struct NodeStatus {
  /// C1Holds: the node cannot be true. C2Holds: it cannot be false.
  StatusKind kind = StatusKind::Open;
  std::optional<SinkAssignment> positive_witness;
  std::optional<SinkAssignment> negative_witness;
};

NodeStatus check_status(const RefGraph& g, const NodeId& node,
                        const EnumerationLimits& limits = {});

struct EscapeStep {
  NodeId node;
  bool value = false;
  /// Operand that decided the node's value (false conjunct or true disjunct);
  /// empty where nothing was chosen.
  std::optional<Formula> choice;
};

struct EscapeWitness {
  SinkAssignment assignment;
  std::vector<EscapeStep> trace;
};

/// A model of the negated node with the trace that follows, from the node
/// down, the conjunct that is false at each false conjunction. Absent iff
/// the node's negation is unsatisfiable.
std::optional<EscapeWitness> escape_search(const RefGraph& g, const NodeId& node,
                                           const EnumerationLimits& limits = {});

/// True iff the models of the node and of its negation split the sink assignments.
bool partition_check(const RefGraph& g, const NodeId& node, const EnumerationLimits& limits = {});

/// Bottom-up three-valued propagation. Throws FormulaError on a missing sink or frontier value.
std::map<NodeId, Truth3> eval3_graph(const RefGraph& g, const std::map<NodeId, Truth3>& sink_values,
                                     const FrontierValues& frontier = {});

enum class UnaryClass : unsigned char { Identity, Negation, ConstFalse, ConstTrue };

/// Unary boolean function computed at `in_node` by a graph whose only sink is `out_sink`.
UnaryClass two_terminal_classify(const RefGraph& g, const NodeId& in_node, const NodeId& out_sink);

std::string_view to_string(StatusKind k);
std::string_view to_string(UnaryClass c);

}  // namespace refgraph
