#include "refgraph/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "refgraph/errors.hpp"
#include "refgraph/parity.hpp"
#include "refgraph/semantics.hpp"

namespace refgraph {

void BareDag::add_node(const NodeId& id) {
  if (id.empty()) throw GraphError("empty node id");
  succ_.try_emplace(id);
}

void BareDag::add_arrow(const NodeId& from, const NodeId& to) {
  if (!has_node(from)) throw GraphError("unknown node '" + from + "'");
  if (!has_node(to)) throw GraphError("unknown node '" + to + "'");
  if (from == to) throw GraphError("self-loop at '" + from + "'");
  if (has_arrow(from, to)) throw GraphError("duplicate arrow '" + from + "' -> '" + to + "'");
  if (reaches(to, from)) throw GraphError("arrow '" + from + "' -> '" + to + "' closes a cycle");
  succ_[from].insert(to);
}

bool BareDag::has_arrow(const NodeId& from, const NodeId& to) const {
  auto it = succ_.find(from);
  return it != succ_.end() && it->second.count(to) != 0;
}

std::vector<NodeId> BareDag::nodes() const {
  std::vector<NodeId> out;
  for (const auto& [id, s] : succ_) out.push_back(id);
  return out;
}

std::size_t BareDag::arrow_count() const {
  std::size_t n = 0;
  for (const auto& [id, s] : succ_) n += s.size();
  return n;
}

std::vector<std::pair<NodeId, NodeId>> BareDag::arrows() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& [id, s] : succ_)
    for (const auto& t : s) out.emplace_back(id, t);
  return out;
}

const std::set<NodeId>& BareDag::successors(const NodeId& id) const {
  auto it = succ_.find(id);
  if (it == succ_.end()) throw GraphError("unknown node '" + id + "'");
  return it->second;
}

bool BareDag::is_source(const NodeId& id) const {
  return std::none_of(succ_.begin(), succ_.end(), [&](const auto& kv) { return kv.second.count(id) != 0; });
}

bool BareDag::reaches(const NodeId& from, const NodeId& to) const {
  std::set<NodeId> seen;
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    auto it = succ_.find(cur);
    if (it == succ_.end()) continue;
    for (const auto& s : it->second) {
      if (s == to) return true;
      if (seen.insert(s).second) stack.push_back(s);
    }
  }
  return false;
}

BareDag BareDag::from_graph(const RefGraph& g) {
  BareDag d;
  for (const auto& id : g.nodes()) d.add_node(id);
  for (const auto& a : g.arrows()) d.succ_[a.from].insert(a.to);
  return d;
}

BareDag bare_chain(std::size_t n) {
  BareDag d;
  for (std::size_t i = 0; i <= n; ++i) d.add_node("x" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) d.add_arrow("x" + std::to_string(i), "x" + std::to_string(i + 1));
  return d;
}

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

std::vector<ArrowKey> path_arrows(const std::vector<NodeId>& p) {
  std::vector<ArrowKey> out;
  for (std::size_t k = 1; k < p.size(); ++k) out.emplace_back(p[k - 1], p[k]);
  return out;
}

}  // namespace

InjectionCheck check_injection(const BareDag& target, std::size_t n, const Injection& inj) {
  if (inj.mu.size() != n + 1) {
    throw Error("injection maps " + std::to_string(inj.mu.size()) + " nodes, expected " +
                std::to_string(n + 1));
  }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (!inj.paths.count({i, j})) throw Error("injection has no path for pair " + pair_name(i, j));

  std::set<NodeId> images;
  for (const auto& m : inj.mu) {
    if (!target.has_node(m)) return {false, "image '" + m + "' is not a target node"};
    if (!images.insert(m).second) return {false, "image '" + m + "' is used twice"};
  }

  std::set<ArrowKey> used;
  for (const auto& [ij, p] : inj.paths) {
    const auto [i, j] = ij;
    if (i >= j || j > n) return {false, "path for invalid pair " + pair_name(i, j)};
    if (p.size() < 2 || p.front() != inj.mu[i] || p.back() != inj.mu[j]) {
      return {false, "path for " + pair_name(i, j) + " does not join the images"};
    }
    if (std::set<NodeId>(p.begin(), p.end()).size() != p.size()) {
      return {false, "path for " + pair_name(i, j) + " repeats a node"};
    }
    for (const auto& a : path_arrows(p)) {
      if (!target.has_arrow(a.first, a.second)) {
        return {false, "path for " + pair_name(i, j) + " uses missing arrow '" + a.first + "' -> '" + a.second + "'"};
      }
      if (!inj.valuation.count(a)) return {false, "arrow '" + a.first + "' -> '" + a.second + "' has no sign"};
      used.insert(a);
    }
  }
  for (const auto& [a, s] : inj.valuation) {
    if (!used.count(a)) return {false, "signed arrow '" + a.first + "' -> '" + a.second + "' lies on no chosen path"};
  }

  auto negatives = [&](std::size_t i, std::size_t j) {
    std::size_t c = 0;
    for (const auto& a : path_arrows(inj.paths.at({i, j}))) c += inj.valuation.at(a) == Sign::Negative;
    return c;
  };
  for (std::size_t i = 0; i + 2 <= n; ++i) {
    for (std::size_t j = i + 2; j <= n; ++j) {
      if ((negatives(i, i + 1) + negatives(i + 1, j) + negatives(i, j)) % 2 == 0) {
        return {false, "triangle " + std::to_string(i) + ", " + std::to_string(i + 1) + ", " +
                           std::to_string(j) + " is not contradictory"};
      }
    }
  }
  return {true, ""};
}

Injection identity_injection(std::size_t n) {
  Injection inj;
  for (std::size_t i = 0; i <= n; ++i) inj.mu.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      inj.paths[{i, j}] = {inj.mu[i], inj.mu[j]};
      inj.valuation[{inj.mu[i], inj.mu[j]}] = Sign::Negative;
    }
  }
  return inj;
}

namespace {

struct CandidatePath {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> arrows;
};

struct BranchResult {
  SearchOutcome outcome = SearchOutcome::Absent;
  std::optional<Injection> injection;
  std::size_t explored = 0;
  bool truncated = false;
};

class Searcher {
 public:
  Searcher(const BareDag& target, std::size_t n, const SearchConfig& cfg)
      : target_(target), n_(n), cfg_(cfg) {
    for (const auto& a : target.arrows()) arrow_index_.emplace(a, arrow_index_.size());
    for (const auto& id : target.nodes()) {
      std::vector<NodeId> desc;
      for (const auto& other : target.nodes())
        if (target.reaches(id, other)) desc.push_back(other);
      descendants_[id] = std::move(desc);
    }
    // Longest path (in arrows) from each node, sinks first.
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& id : target.nodes()) {
        std::size_t h = 0;
        for (const auto& s : target.successors(id)) h = std::max(h, height_[s] + 1);
        if (h != height_[id]) {
          height_[id] = h;
          changed = true;
        }
      }
    }
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = j; i-- > 0;) pairs_.emplace_back(i, j);
  }

  std::vector<NodeId> roots() const {
    std::vector<NodeId> out;
    for (const auto& id : target_.nodes()) {
      if (height_.at(id) < n_) continue;
      if (cfg_.require_source && !target_.is_source(id)) continue;
      out.push_back(id);
    }
    return out;
  }

  BranchResult run(const NodeId& root) const {
    Branch b(*this);
    b.mu.push_back(root);
    b.result.explored = 1;
    if (b.choose_images()) {
      b.result.outcome = SearchOutcome::Found;
    } else if (b.out_of_budget || b.result.truncated) {
      b.result.outcome = SearchOutcome::Inconclusive;
    }
    return std::move(b.result);
  }

 private:
  struct Branch {
    explicit Branch(const Searcher& searcher) : s(searcher), parity(searcher.arrow_index_.size()) {}

    const Searcher& s;
    ParitySystem parity;
    std::vector<NodeId> mu;
    std::vector<const CandidatePath*> chosen;
    std::map<std::pair<NodeId, NodeId>, std::vector<CandidatePath>> cache;
    BranchResult result;
    bool out_of_budget = false;

    bool tick() {
      if (++result.explored > s.cfg_.max_nodes_explored) out_of_budget = true;
      return !out_of_budget;
    }

    bool choose_images() {
      if (mu.size() == s.n_ + 1) return choose_path(0);
      const std::size_t i = mu.size();
      for (const auto& cand : s.descendants_.at(mu.back())) {
        if (s.height_.at(cand) < s.n_ - i) continue;
        if (!tick()) return false;
        mu.push_back(cand);
        if (choose_images()) return true;
        mu.pop_back();
        if (out_of_budget) return false;
      }
      return false;
    }

    const std::vector<CandidatePath>& candidates(const NodeId& from, const NodeId& to) {
      auto key = std::make_pair(from, to);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      bool truncated = false;
      auto seqs = enumerate_node_paths([&](const NodeId& id) { return s.target_.successors(id); }, from, to,
                                       s.cfg_.path_length_cap, &truncated);
      result.truncated = result.truncated || truncated;
      std::stable_sort(seqs.begin(), seqs.end(),
                       [](const auto& a, const auto& b) { return a.size() < b.size(); });
      std::vector<CandidatePath> out;
      for (auto& seq : seqs) {
        CandidatePath c{std::move(seq), {}};
        for (std::size_t k = 1; k < c.nodes.size(); ++k)
          c.arrows.push_back(s.arrow_index_.at({c.nodes[k - 1], c.nodes[k]}));
        out.push_back(std::move(c));
      }
      return cache.emplace(key, std::move(out)).first->second;
    }

    const CandidatePath& path_of(std::size_t i, std::size_t j) const {
      // pairs_ lists (i, j) by ascending j, then descending i.
      return *chosen[j * (j - 1) / 2 + (j - 1 - i)];
    }

    bool choose_path(std::size_t k) {
      if (k == s.pairs_.size()) {
        finish();
        return true;
      }
      const auto [i, j] = s.pairs_[k];
      for (const auto& cand : candidates(mu[i], mu[j])) {
        if (!tick()) return false;
        bool pushed = false;
        if (j >= i + 2) {
          std::vector<std::size_t> row = cand.arrows;
          const auto& a = path_of(i, i + 1).arrows;
          const auto& b = path_of(i + 1, j).arrows;
          row.insert(row.end(), a.begin(), a.end());
          row.insert(row.end(), b.begin(), b.end());
          if (!parity.push(row, true)) continue;
          pushed = true;
        }
        chosen.push_back(&cand);
        if (choose_path(k + 1)) return true;
        chosen.pop_back();
        if (pushed) parity.pop();
        if (out_of_budget) return false;
      }
      return false;
    }

    void finish() {
      // Unconstrained arrows default to negative, as in Yablo's own structure.
      const std::vector<bool> negative = parity.solve(true);
      Injection inj;
      inj.mu = mu;
      for (std::size_t k = 0; k < s.pairs_.size(); ++k) {
        const CandidatePath& p = *chosen[k];
        inj.paths[s.pairs_[k]] = p.nodes;
        for (std::size_t a = 0; a < p.arrows.size(); ++a) {
          inj.valuation[{p.nodes[a], p.nodes[a + 1]}] = negative[p.arrows[a]] ? Sign::Negative : Sign::Positive;
        }
      }
      result.injection = std::move(inj);
    }
  };

  const BareDag& target_;
  std::size_t n_;
  SearchConfig cfg_;
  std::map<ArrowKey, std::size_t> arrow_index_;
  std::map<NodeId, std::vector<NodeId>> descendants_;
  std::map<NodeId, std::size_t> height_;
  std::vector<IndexPair> pairs_;
};

}  // namespace

SearchResult find_injection(const BareDag& target, std::size_t n, const SearchConfig& cfg) {
  if (n < 1) throw Error("find_injection needs n >= 1");
  if (cfg.max_nodes_explored == 0 || cfg.path_length_cap == 0) throw Error("search bounds must be positive");
  const Searcher searcher(target, n, cfg);
  const auto roots = searcher.roots();
  std::vector<BranchResult> results(roots.size());

  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(roots.size())));
  if (jobs <= 1) {
    for (std::size_t k = 0; k < roots.size(); ++k) {
      results[k] = searcher.run(roots[k]);
      if (results[k].outcome == SearchOutcome::Found) {
        results.resize(k + 1);
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t k; (k = next++) < roots.size();) results[k] = searcher.run(roots[k]);
      });
    }
    for (auto& t : workers) t.join();
    auto found = std::find_if(results.begin(), results.end(),
                              [](const BranchResult& r) { return r.outcome == SearchOutcome::Found; });
    if (found != results.end()) results.erase(found + 1, results.end());
  }

  SearchResult out;
  bool inconclusive = false;
  for (auto& r : results) {
    out.explored += r.explored;
    inconclusive = inconclusive || r.outcome == SearchOutcome::Inconclusive;
    if (r.outcome == SearchOutcome::Found) {
      out.outcome = SearchOutcome::Found;
      out.injection = std::move(r.injection);
    }
  }
  if (out.outcome == SearchOutcome::Found) {
    out.root_is_source = target.is_source(out.injection->mu.front());
  } else if (inconclusive) {
    out.outcome = SearchOutcome::Inconclusive;
    out.note = "search budget or path length cap reached";
  } else {
    out.note = roots.empty() ? "no node starts a long enough path" : "search space exhausted";
  }
  return out;
}

RefGraph extend_interpretation(const BareDag& target, const Injection& inj) {
  if (inj.mu.size() < 2) throw Error("injection maps fewer than two nodes");
  const std::size_t n = inj.mu.size() - 1;
  const InjectionCheck check = check_injection(target, n, inj);
  if (!check.ok) throw Error("injection rejected: " + check.detail);

  std::set<NodeId> on_paths;
  for (const auto& [ij, p] : inj.paths) on_paths.insert(p.begin(), p.end());
  const NodeId& last = inj.mu.back();

  RefGraph g;
  for (const auto& id : target.nodes()) g.add_node(id);
  for (const auto& id : target.nodes()) {
    const auto& succ = target.successors(id);
    std::vector<Formula> conjuncts;
    if (id == last && !succ.empty()) conjuncts.push_back(Formula::frontier("xi:" + id));
    for (const auto& s : succ) {
      auto it = inj.valuation.find({id, s});
      if (on_paths.count(id) && it != inj.valuation.end()) {
        conjuncts.push_back(Formula::literal(s, it->second));
      } else {
        conjuncts.push_back(Formula::var(s) | Formula::neg_var(s));
      }
    }
    if (!conjuncts.empty()) {
      g.define(id, Formula::conj(std::move(conjuncts)));
    } else if (!on_paths.count(id)) {
      g.set_formula(id, Formula::top());
    }
  }
  return g;
}

ExtensionReport verify_extension(const RefGraph& g, const Injection& inj) {
  ExtensionReport r;
  std::map<NodeId, Truth3> sinks;
  for (const auto& s : g.sinks()) sinks[s] = Truth3::Xi;
  FrontierValues frontier;
  for (const auto& id : g.nodes())
    if (const auto& f = g.formula(id))
      for (const auto& tag : f->frontier_tags()) frontier[tag] = Truth3::Xi;
  r.values = eval3_graph(g, sinks, frontier);

  const std::set<NodeId> image(inj.mu.begin(), inj.mu.end());
  r.image_all_xi = std::all_of(image.begin(), image.end(),
                               [&](const NodeId& id) { return r.values.at(id) == Truth3::Xi; });
  r.non_image_t_or_xi = std::all_of(r.values.begin(), r.values.end(), [&](const auto& kv) {
    return image.count(kv.first) || kv.second != Truth3::F;
  });

  const bool direct = std::all_of(inj.paths.begin(), inj.paths.end(),
                                  [](const auto& kv) { return kv.second.size() == 2; });
  if (direct && inj.mu.size() >= 2) {
    RefGraph core;
    for (const auto& m : inj.mu) core.add_node(m);
    for (std::size_t i = 0; i + 1 < inj.mu.size(); ++i) {
      std::vector<Formula> lits;
      for (std::size_t j = i + 1; j < inj.mu.size(); ++j)
        lits.push_back(Formula::literal(inj.mu[j], inj.valuation.at({inj.mu[i], inj.mu[j]})));
      core.define(inj.mu[i], Formula::conj(std::move(lits)));
    }
    r.c1_at_root = check_status(core, inj.mu.front()).kind == StatusKind::C1Holds;
  }
  return r;
}

Truth3 tautology_chain_eval(const std::vector<ChainLink>& chain, Truth3 seed) {
  if (chain.empty()) throw Error("tautology chain is empty");
  Truth3 v = seed;
  for (ChainLink l : chain) v = l == ChainLink::OrTautology ? or3(v, not3(v)) : and3(v, not3(v));
  return v;
}

std::string_view to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found:
      return "found";
    case SearchOutcome::Absent:
      return "absent";
    case SearchOutcome::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

}  // namespace refgraph
