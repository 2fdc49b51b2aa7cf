#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "refgraph/graph.hpp"

namespace refgraph {

inline constexpr std::size_t kDefaultMaxPathLength = 32;

/// Nonempty chain of arrows, each ending where the next begins.
struct Path {
  std::vector<Arrow> arrows;

  const NodeId& start() const { return arrows.front().from; }
  const NodeId& end() const { return arrows.back().to; }
  std::size_t length() const { return arrows.size(); }
  std::vector<NodeId> nodes() const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Two paths with common endpoints and different values.
struct Cell {
  Path sigma;
  Path sigma_prime;
};

bool is_chained(const Path& p);

/// Positive iff the path has an even number of negative arrows.
Sign path_value(const Path& p);

/// Value of the prefix ending at each node of `p` (the start node maps to positive).
std::map<NodeId, Sign> prefix_values(const Path& p);

Path path_from_nodes(const RefGraph& g, std::span<const NodeId> nodes);

/// Simple node sequences from `from` to `to` with at most `max_len` arrows,
/// in lexicographic order of the node sequence. `successors(id)` must return
/// a range of NodeId in ascending order. `truncated` (optional) is set when
/// a longer path to `to` was cut off by `max_len`.
template <class Successors>
std::vector<std::vector<NodeId>> enumerate_node_paths(Successors&& successors, const NodeId& from,
                                                      const NodeId& to, std::size_t max_len,
                                                      bool* truncated = nullptr) {
  std::map<NodeId, bool> reach;
  auto can_reach = [&](auto&& self, const NodeId& n) -> bool {
    if (n == to) return true;
    auto it = reach.find(n);
    if (it != reach.end()) return it->second;
    bool r = false;
    for (const NodeId& s : successors(n)) r = self(self, s) || r;
    reach[n] = r;
    return r;
  };
  std::vector<std::vector<NodeId>> out;
  if (truncated) *truncated = false;
  if (from == to || !can_reach(can_reach, from)) return out;
  std::vector<NodeId> stack{from};
  auto dfs = [&](auto&& self) -> void {
    const NodeId cur = stack.back();
    if (cur == to) {
      out.push_back(stack);
      return;
    }
    for (const NodeId& s : successors(cur)) {
      if (!can_reach(can_reach, s)) continue;
      if (stack.size() > max_len) {
        if (truncated) *truncated = true;
        return;
      }
      stack.push_back(s);
      self(self);
      stack.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

struct PathEnumeration {
  std::vector<Path> paths;
  bool truncated = false;
};

PathEnumeration enumerate_paths_checked(const RefGraph& g, const NodeId& from, const NodeId& to,
                                        std::size_t max_len = kDefaultMaxPathLength);

/// All simple paths `from` -> `to` of length at most `max_len`, lexicographic by node sequence.
std::vector<Path> enumerate_paths(const RefGraph& g, const NodeId& from, const NodeId& to,
                                  std::size_t max_len = kDefaultMaxPathLength);

/// All paths from `from` that end in a node without successors.
std::vector<Path> maximal_paths(const RefGraph& g, const NodeId& from,
                                std::size_t max_len = kDefaultMaxPathLength);

/// Every unordered pair of enumerated paths whose values differ, ordered by
/// the (i, j) index pair into enumerate_paths().
std::vector<Cell> find_contradictory_cells(const RefGraph& g, const NodeId& from, const NodeId& to,
                                           std::size_t max_len = kDefaultMaxPathLength);

struct LoopReport {
  /// Pairs (i, j), i < j, of paths that reach a shared node with opposite values.
  std::vector<std::pair<std::size_t, std::size_t>> contradicts;
  /// Indices of an odd cycle in the contradicts relation, if any.
  std::optional<std::vector<std::size_t>> odd_cycle_witness;
};

/// Builds the contradicts relation over paths sharing an origin and searches it for an odd cycle.
LoopReport contradiction_loop_check(std::span<const Path> paths);

}  // namespace refgraph
