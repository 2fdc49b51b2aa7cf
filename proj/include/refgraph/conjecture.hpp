#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "refgraph/graph.hpp"
#include "refgraph/paths.hpp"
#include "refgraph/truth3.hpp"

namespace refgraph {

/// Directed acyclic graph with unsigned arrows: the structure an
/// interpretation is sought for.
class BareDag {
 public:
  void add_node(const NodeId& id);
  bool has_node(const NodeId& id) const { return succ_.count(id) != 0; }
  /// Throws GraphError on unknown endpoints, self-loops, duplicates or a cycle.
  void add_arrow(const NodeId& from, const NodeId& to);
  bool has_arrow(const NodeId& from, const NodeId& to) const;

  std::vector<NodeId> nodes() const;
  std::size_t node_count() const { return succ_.size(); }
  std::size_t arrow_count() const;
  std::vector<std::pair<NodeId, NodeId>> arrows() const;
  const std::set<NodeId>& successors(const NodeId& id) const;
  bool is_source(const NodeId& id) const;
  bool reaches(const NodeId& from, const NodeId& to) const;

  /// Forgets formulas and signs.
  static BareDag from_graph(const RefGraph& g);

  friend bool operator==(const BareDag&, const BareDag&) = default;

 private:
  std::map<NodeId, std::set<NodeId>> succ_;
};

/// Chain `x0 -- x1 -- ... -- xn`.
BareDag bare_chain(std::size_t n);

using IndexPair = std::pair<std::size_t, std::size_t>;
using ArrowKey = std::pair<NodeId, NodeId>;

/// Image of YS_n: mu[i] is the image of x_i, paths[(i, j)] the chosen image
/// path mu[i] -> mu[j] as a node sequence, valuation the sign of every arrow
/// on a chosen path.
struct Injection {
  std::vector<NodeId> mu;
  std::map<IndexPair, std::vector<NodeId>> paths;
  std::map<ArrowKey, Sign> valuation;

  friend bool operator==(const Injection&, const Injection&) = default;
};

struct InjectionCheck {
  bool ok = false;
  std::string detail;
};

/// Verifies an injection of YS_n. Throws Error when mu has the wrong size or
/// a pair (i, j) has no chosen path.
InjectionCheck check_injection(const BareDag& target, std::size_t n, const Injection& inj);

/// The identity on yablo_truncation(n) with direct arrows, all negative.
Injection identity_injection(std::size_t n);

struct SearchConfig {
  /// Per choice of the image of x0.
  std::size_t max_nodes_explored = 1'000'000;
  std::size_t path_length_cap = 16;
  bool require_source = false;
  unsigned jobs = 1;
};

enum class SearchOutcome : unsigned char { Found, Absent, Inconclusive };

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Absent;
  std::optional<Injection> injection;
  std::size_t explored = 0;
  /// Whether the image of x0 is a source of the target (only when found).
  bool root_is_source = false;
  std::string note;
};

/// Backtracking search: images of x0..xn in descending reachability, then
/// one image path per pair, triangle parities solved over GF(2). Absent only
/// when the space was exhausted within budget and without truncated path
/// enumerations; otherwise Inconclusive.
SearchResult find_injection(const BareDag& target, std::size_t n, const SearchConfig& cfg = {});

/// Interprets the whole target: nodes on chosen paths take the valued literals
/// of their path successors and (s | !s) for other successors; mu(x_n) carries
/// the frontier leaf `xi:<id>` (or stays a sink when it has no successors);
/// other nodes take (s | !s) for every successor, or the constant true when
/// they have none. Throws Error if the injection fails check_injection.
RefGraph extend_interpretation(const BareDag& target, const Injection& inj);

struct ExtensionReport {
  bool image_all_xi = false;
  bool non_image_t_or_xi = false;
  std::map<NodeId, Truth3> values;
  /// C1Holds at mu(x0) on the image-only signed graph; computed only when
  /// every chosen path is a single arrow.
  std::optional<bool> c1_at_root;

  bool ok() const { return image_all_xi && non_image_t_or_xi && c1_at_root.value_or(true); }
};

/// Three-valued propagation with every sink and frontier leaf at xi.
ExtensionReport verify_extension(const RefGraph& g, const Injection& inj);

enum class ChainLink : unsigned char { OrTautology, AndContradiction };

/// Folds v -> v | !v or v -> v & !v over the chain. Throws Error on an empty chain.
Truth3 tautology_chain_eval(const std::vector<ChainLink>& chain, Truth3 seed);

std::string_view to_string(SearchOutcome o);

}  // namespace refgraph
