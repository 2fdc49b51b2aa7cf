#include "refgraph/paths.hpp"

#include <deque>

#include "refgraph/errors.hpp"

namespace refgraph {

std::vector<NodeId> Path::nodes() const {
  std::vector<NodeId> out;
  if (arrows.empty()) return out;
  out.push_back(arrows.front().from);
  for (const auto& a : arrows) out.push_back(a.to);
  return out;
}

bool is_chained(const Path& p) {
  if (p.arrows.empty()) return false;
  for (std::size_t i = 1; i < p.arrows.size(); ++i)
    if (p.arrows[i - 1].to != p.arrows[i].from) return false;
  return true;
}

Sign path_value(const Path& p) {
  Sign v = Sign::Positive;
  for (const auto& a : p.arrows) v = compose_value(v, a.sign);
  return v;
}

std::map<NodeId, Sign> prefix_values(const Path& p) {
  std::map<NodeId, Sign> out;
  if (p.arrows.empty()) return out;
  Sign v = Sign::Positive;
  out[p.start()] = v;
  for (const auto& a : p.arrows) {
    v = compose_value(v, a.sign);
    out[a.to] = v;
  }
  return out;
}

Path path_from_nodes(const RefGraph& g, std::span<const NodeId> nodes) {
  Path p;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto s = g.arrow_sign(nodes[i - 1], nodes[i]);
    if (!s) throw GraphError("no arrow '" + nodes[i - 1] + "' -> '" + nodes[i] + "'");
    p.arrows.push_back({nodes[i - 1], nodes[i], *s});
  }
  return p;
}

namespace {

auto successor_ids(const RefGraph& g) {
  return [&g](const NodeId& id) {
    std::vector<NodeId> out;
    for (const auto& [to, s] : g.successors(id)) out.push_back(to);
    return out;
  };
}

}  // namespace

PathEnumeration enumerate_paths_checked(const RefGraph& g, const NodeId& from, const NodeId& to,
                                        std::size_t max_len) {
  if (!g.has_node(from)) throw GraphError("unknown node '" + from + "'");
  if (!g.has_node(to)) throw GraphError("unknown node '" + to + "'");
  PathEnumeration result;
  for (const auto& seq : enumerate_node_paths(successor_ids(g), from, to, max_len, &result.truncated))
    result.paths.push_back(path_from_nodes(g, seq));
  return result;
}

std::vector<Path> enumerate_paths(const RefGraph& g, const NodeId& from, const NodeId& to,
                                  std::size_t max_len) {
  return enumerate_paths_checked(g, from, to, max_len).paths;
}

std::vector<Path> maximal_paths(const RefGraph& g, const NodeId& from, std::size_t max_len) {
  if (!g.has_node(from)) throw GraphError("unknown node '" + from + "'");
  std::vector<Path> out;
  std::vector<NodeId> stack{from};
  auto dfs = [&](auto&& self) -> void {
    const auto& succ = g.successors(stack.back());
    if (succ.empty()) {
      if (stack.size() > 1) out.push_back(path_from_nodes(g, stack));
      return;
    }
    if (stack.size() > max_len) return;
    for (const auto& [to, s] : succ) {
      stack.push_back(to);
      self(self);
      stack.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

std::vector<Cell> find_contradictory_cells(const RefGraph& g, const NodeId& from, const NodeId& to,
                                           std::size_t max_len) {
  const auto paths = enumerate_paths(g, from, to, max_len);
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j)
      if (path_value(paths[i]) != path_value(paths[j])) cells.push_back({paths[i], paths[j]});
  return cells;
}

LoopReport contradiction_loop_check(std::span<const Path> paths) {
  LoopReport report;
  const std::size_t n = paths.size();
  std::vector<std::map<NodeId, Sign>> values;
  values.reserve(n);
  for (const auto& p : paths) values.push_back(prefix_values(p));

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool clash = false;
      for (const auto& [node, v] : values[i]) {
        if (!paths[i].arrows.empty() && node == paths[i].start()) continue;
        auto it = values[j].find(node);
        if (it != values[j].end() && it->second != v) {
          clash = true;
          break;
        }
      }
      if (clash) {
        report.contradicts.emplace_back(i, j);
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }

  // Two-colouring by BFS; a same-colour edge closes an odd cycle through the BFS tree.
  std::vector<int> colour(n, -1);
  std::vector<std::size_t> parent(n), depth(n, 0);
  for (std::size_t root = 0; root < n && !report.odd_cycle_witness; ++root) {
    if (colour[root] != -1) continue;
    colour[root] = 0;
    parent[root] = root;
    std::deque<std::size_t> queue{root};
    while (!queue.empty() && !report.odd_cycle_witness) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj[u]) {
        if (colour[v] == -1) {
          colour[v] = 1 - colour[u];
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (colour[v] == colour[u]) {
          std::vector<std::size_t> left{u}, right{v};
          std::size_t a = u, b = v;
          while (a != b) {
            if (depth[a] >= depth[b]) {
              a = parent[a];
              left.push_back(a);
            } else {
              b = parent[b];
              right.push_back(b);
            }
          }
          right.pop_back();
          left.insert(left.end(), right.rbegin(), right.rend());
          report.odd_cycle_witness = std::move(left);
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace refgraph
