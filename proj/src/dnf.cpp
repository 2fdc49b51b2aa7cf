#include "refgraph/dnf.hpp"

#include <algorithm>

#include "refgraph/errors.hpp"

namespace refgraph {

Conjunct make_conjunct(std::vector<Literal> literals) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  return literals;
}

bool is_contradictory(const Conjunct& c) {
  // Complementary literals are adjacent in the canonical order.
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i - 1].atom == c[i].atom && c[i - 1].frontier == c[i].frontier) return true;
  }
  return false;
}

Dnf::Dnf(std::vector<Conjunct> disjuncts) {
  for (auto& c : disjuncts) c = make_conjunct(std::move(c));
  std::sort(disjuncts.begin(), disjuncts.end());
  disjuncts.erase(std::unique(disjuncts.begin(), disjuncts.end()), disjuncts.end());
  disjuncts_ = std::move(disjuncts);
}

bool Dnf::has_empty_conjunct() const {
  return !disjuncts_.empty() && disjuncts_.front().empty();
}

std::set<std::string> Dnf::atoms() const {
  std::set<std::string> out;
  for (const auto& c : disjuncts_)
    for (const auto& l : c) out.insert(l.atom);
  return out;
}

bool Dnf::has_frontier() const {
  for (const auto& c : disjuncts_)
    for (const auto& l : c)
      if (l.frontier) return true;
  return false;
}

Dnf conjoin(const Dnf& a, const Dnf& b, std::size_t limit) {
  if (a.size() * b.size() > limit) {
    throw LimitError("DNF product of " + std::to_string(a.size()) + " x " +
                     std::to_string(b.size()) + " conjuncts exceeds limit " +
                     std::to_string(limit));
  }
  std::vector<Conjunct> out;
  out.reserve(a.size() * b.size());
  for (const auto& ca : a.disjuncts()) {
    for (const auto& cb : b.disjuncts()) {
      Conjunct c = ca;
      c.insert(c.end(), cb.begin(), cb.end());
      out.push_back(std::move(c));
    }
  }
  return Dnf(std::move(out));
}

Dnf disjoin(const Dnf& a, const Dnf& b) {
  std::vector<Conjunct> out = a.disjuncts();
  out.insert(out.end(), b.disjuncts().begin(), b.disjuncts().end());
  return Dnf(std::move(out));
}

Dnf to_dnf(const Formula& f, std::size_t limit) {
  switch (f.kind()) {
    case Formula::Kind::Literal:
      return Dnf::of(Literal::var(f.name(), f.sign()));
    case Formula::Kind::Frontier:
      return Dnf::of(Literal::xi(f.name(), f.sign()));
    case Formula::Kind::True:
      return Dnf::verum();
    case Formula::Kind::False:
      return Dnf::falsum();
    case Formula::Kind::And: {
      Dnf acc = Dnf::verum();
      for (const auto& op : f.operands()) acc = conjoin(acc, to_dnf(op, limit), limit);
      return acc;
    }
    case Formula::Kind::Or: {
      Dnf acc;
      for (const auto& op : f.operands()) acc = disjoin(acc, to_dnf(op, limit));
      if (acc.size() > limit) throw LimitError("DNF disjunction exceeds limit");
      return acc;
    }
  }
  return {};
}

Dnf negate_dnf(const Dnf& d, std::size_t limit) {
  // The complement of a disjunction is the conjunction of the complemented
  // conjuncts; each of those is a disjunction of complemented literals, so the
  // expansion enumerates exactly the choice functions.
  std::size_t product = 1;
  for (const auto& c : d.disjuncts()) {
    if (c.empty()) return Dnf::falsum();
    if (product > limit / c.size()) {
      throw LimitError("choice-function product exceeds limit " + std::to_string(limit));
    }
    product *= c.size();
  }
  std::vector<Conjunct> out;
  out.reserve(product);
  std::vector<std::size_t> pick(d.size(), 0);
  const auto& ds = d.disjuncts();
  while (true) {
    Conjunct c;
    c.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) c.push_back(ds[i][pick[i]].complement());
    out.push_back(std::move(c));
    std::size_t i = 0;
    for (; i < ds.size(); ++i) {
      if (++pick[i] < ds[i].size()) break;
      pick[i] = 0;
    }
    if (i == ds.size()) break;
  }
  return Dnf(std::move(out));
}

namespace {

bool subsumes(const Conjunct& small, const Conjunct& big) {
  return small.size() <= big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Conjunct> drop_subsumed(std::vector<Conjunct> cs) {
  std::sort(cs.begin(), cs.end(), [](const Conjunct& a, const Conjunct& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Conjunct> kept;
  for (auto& c : cs) {
    bool covered = std::any_of(kept.begin(), kept.end(),
                               [&](const Conjunct& k) { return subsumes(k, c); });
    if (!covered) kept.push_back(std::move(c));
  }
  return kept;
}

}  // namespace

Dnf simplify_dnf(const Dnf& d) {
  std::vector<Conjunct> cs;
  for (const auto& c : d.disjuncts())
    if (!is_contradictory(c)) cs.push_back(c);
  return Dnf(drop_subsumed(std::move(cs)));
}

Dnf blake_canonical_form(const Dnf& d) {
  std::vector<Conjunct> cs = simplify_dnf(d).disjuncts();
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t n = cs.size();
    for (std::size_t i = 0; i < n && !changed; ++i) {
      for (std::size_t j = i + 1; j < n && !changed; ++j) {
        // Consensus exists iff exactly one atom clashes.
        const Literal* clash = nullptr;
        int clashes = 0;
        for (const auto& l : cs[i]) {
          if (std::binary_search(cs[j].begin(), cs[j].end(), l.complement())) {
            clash = &l;
            ++clashes;
          }
        }
        if (clashes != 1) continue;
        Conjunct merged;
        for (const auto& l : cs[i])
          if (l.atom != clash->atom || l.frontier != clash->frontier) merged.push_back(l);
        for (const auto& l : cs[j])
          if (l.atom != clash->atom || l.frontier != clash->frontier) merged.push_back(l);
        merged = make_conjunct(std::move(merged));
        bool covered = std::any_of(cs.begin(), cs.end(),
                                   [&](const Conjunct& k) { return subsumes(k, merged); });
        if (covered) continue;
        cs.push_back(std::move(merged));
        cs = drop_subsumed(std::move(cs));
        changed = true;
      }
    }
  }
  return Dnf(std::move(cs));
}

bool equivalent(const Dnf& a, const Dnf& b) {
  return blake_canonical_form(a) == blake_canonical_form(b);
}

bool is_tautology(const Dnf& d) { return blake_canonical_form(d) == Dnf::verum(); }

bool is_unsatisfiable(const Dnf& d) { return simplify_dnf(d).is_falsum(); }

bool eval2(const Dnf& d, const Assignment2& assignment) {
  bool any = false;
  for (const auto& c : d.disjuncts()) {
    bool all = true;
    for (const auto& l : c) {
      if (l.frontier) throw FormulaError("frontier literal '" + l.atom + "' has no classical value");
      auto it = assignment.find(l.atom);
      if (it == assignment.end()) throw FormulaError("unassigned variable '" + l.atom + "'");
      if (it->second != l.positive()) all = false;
    }
    any = any || all;
  }
  return any;
}

Formula to_formula(const Dnf& d) {
  if (d.is_falsum()) return Formula::bottom();
  std::vector<Formula> disjuncts;
  for (const auto& c : d.disjuncts()) {
    if (c.empty()) {
      disjuncts.push_back(Formula::top());
      continue;
    }
    std::vector<Formula> lits;
    for (const auto& l : c) {
      lits.push_back(l.frontier ? Formula::frontier(l.atom, l.sign)
                                : Formula::literal(l.atom, l.sign));
    }
    disjuncts.push_back(Formula::conj(std::move(lits)));
  }
  return Formula::disj(std::move(disjuncts));
}

std::string to_string(const Literal& l) {
  return std::string(l.positive() ? "" : "!") + (l.frontier ? "$" : "") + l.atom;
}

std::string to_string(const Dnf& d) {
  if (d.is_falsum()) return "false";
  std::string out;
  for (const auto& c : d.disjuncts()) {
    if (!out.empty()) out += " | ";
    if (c.empty()) {
      out += "true";
      continue;
    }
    const bool wrap = d.size() > 1 && c.size() > 1;
    if (wrap) out += "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += " & ";
      out += to_string(c[i]);
    }
    if (wrap) out += ")";
  }
  return out;
}

}  // namespace refgraph
