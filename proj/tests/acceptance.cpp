// One PASS/FAIL line per acceptance criterion. A criterion passes only when
// its checks hold and it finishes inside its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "refgraph/cells.hpp"
#include "refgraph/conjecture.hpp"
#include "refgraph/construction.hpp"
#include "refgraph/io.hpp"
#include "refgraph/paths.hpp"
#include "refgraph/semantics.hpp"

using namespace refgraph;

namespace {

// Collects failed expectations; a criterion passes when none were recorded.
class Probe {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return !failed_; }
  std::string summary() const {
    std::string s = std::to_string(checks_) + " checks";
    if (!notes_.empty()) s += "; " + notes_;
    for (const auto& f : failures_) s += "; failed: " + f;
    return s;
  }

 private:
  std::size_t checks_ = 0;
  bool failed_ = false;
  std::vector<std::string> failures_;
  std::string notes_;
};

struct Criterion {
  int id;
  std::string name;
  double limit_ms;
  std::function<void(Probe&)> body;
};

constexpr Truth3 T = Truth3::T, F = Truth3::F, X = Truth3::Xi;

Dnf D(const char* text) { return to_dnf(parse_formula(text)); }

void truth_tables(Probe& p) {
  // Entries stated outright, then the full tables against hand-written ones.
  p.expect(and3(X, T) == X, "xi & T = xi");
  p.expect(or3(X, T) == T, "xi | T = T");
  p.expect(and3(X, F) == F, "xi & F = F");
  p.expect(or3(X, F) == X, "xi | F = xi");
  p.expect(and3(X, X) == X && or3(X, X) == X, "xi & xi = xi | xi = xi");
  p.expect(or3(F, X) == X, "F | xi = xi");
  p.expect(not3(X) == X && not3(T) == F && not3(F) == T, "negation");
  int entries = 0;
  for (auto a : kAllTruth3) {
    p.expect(not3(a) == oracle::t_not(a), "not table");
    ++entries;
    for (auto b : kAllTruth3) {
      p.expect(and3(a, b) == oracle::t_and(a, b), "and table");
      p.expect(or3(a, b) == oracle::t_or(a, b), "or table");
      entries += 2;
    }
  }
  p.expect(entries == 21, "21 entries");
}

std::set<std::string> labels(const std::vector<VariantReport>& rows, bool (*pred)(const VariantReport&)) {
  std::set<std::string> out;
  for (const auto& r : rows)
    if (pred(r)) out.insert(label(r.variant));
  return out;
}

std::set<std::string> grid(std::initializer_list<std::pair<int, int>> cells) {
  std::set<std::string> out;
  for (auto [z, y] : cells) out.insert(label({z, y}));
  return out;
}

void variant_table(Probe& p) {
  const auto rows = classify_all();
  p.expect(rows.size() == 18, "18 rows");
  std::set<std::string> c221_expect, c222_fail_expect;
  for (int z = 1; z <= 3; ++z) {
    for (int y : {1, 3, 4, 5, 6}) c221_expect.insert(label({z, y}));
    for (int y = 1; y <= 6; ++y) c222_fail_expect.insert(label({1, y}));
    c222_fail_expect.insert(label({z, 4}));
  }
  for (int y : {1, 5, 6}) c222_fail_expect.insert(label({2, y}));
  p.expect(labels(rows, [](const VariantReport& r) { return r.c221; }) == c221_expect, "c221 set");
  p.expect(labels(rows, [](const VariantReport& r) { return !r.c222; }) == c222_fail_expect, "c222 failure set");
  p.expect(labels(rows, [](const VariantReport& r) { return r.c224; }) ==
               grid({{2, 3}, {3, 1}, {3, 2}, {3, 3}, {3, 5}, {3, 6}}),
           "c224 set");
  p.expect(labels(rows, [](const VariantReport& r) { return r.all_ok(); }) ==
               grid({{2, 3}, {3, 1}, {3, 3}, {3, 5}, {3, 6}}),
           "all-ok set");
}

void construction_ledger(Probe& p) {
  const BuildState s = inductive_build(canonical_script(2));
  const std::vector<const char*> steps{"(1)", "(2.1)", "(2.2)", "(3)", "(4.1)", "(4.2)", "(5)", "(6)"};
  const std::vector<Dnf> x0{Dnf::falsum(), D("x3 & !x2"), D("x3"), Dnf::falsum(),
                            Dnf::falsum(), Dnf::falsum(), D("x4"), Dnf::falsum()};
  p.expect(s.ledger.size() == x0.size(), "eight ledger entries");
  for (std::size_t k = 0; k < x0.size() && k < s.ledger.size(); ++k) {
    p.expect(s.ledger[k].expressions.at("x0") == blake_canonical_form(x0[k]), std::string("x0 at ") + steps[k]);
  }
  const auto& e3 = s.ledger.at(3).expressions;
  p.expect(e3.at("x1").is_falsum(), "x1 empty at (3)");
  p.expect(e3.at("x2") == D("!x3"), "x2 = !x3 at (3)");
  p.expect(s.ledger.at(1).expressions.at("x1") == D("!x2 & !x3"), "x1 at (2.1)");
  p.expect(s.ledger.at(2).expressions.at("x1").is_falsum(), "x1 empty at (2.2)");
  p.expect(s.ledger.at(5).expressions.at("x2").is_falsum(), "x2 empty at (4.2)");
  p.expect(s.ledger.at(6).expressions.at("x1").is_falsum(), "x1 empty at (5)");
  p.expect(s.graph == yablo_truncation(4), "final graph is the truncation");
}

void resolved_forms(Probe& p) {
  auto form = [](int z, int y) { return to_string(resolved_form({z, y})); };
  p.expect(form(2, 3) == "!$y_xi", "<2.3>");
  p.expect(form(3, 1) == "$z_xi & !$z_xi", "<3.1>");
  p.expect(form(3, 3) == "!$y_xi & !$z_xi", "<3.3>");
  p.expect(form(3, 5) == "$z_xi & !$z_xi", "<3.5>");
  p.expect(form(3, 6) == "!$y_xi & $z_xi & !$z_xi", "<3.6>");
  const Dnf full = to_dnf(diamond_head(false));
  p.expect(full == D("(!$y_xi & !$y'_xi) | (!$y_xi & !$z_xi) | ($z_xi & !$y'_xi) | ($z_xi & !$z_xi)"),
           "diamond, four disjuncts");
  p.expect(to_dnf(diamond_resolved_form(false)) ==
               D("(!$y_xi & !$y'_xi) | (!$y_xi & !$z_xi) | ($z_xi & !$y'_xi)"),
           "diamond, contradiction dropped");
  p.expect(to_string(diamond_resolved_form(true)) == "!$y_xi & !$z_xi", "simplified diamond");
  p.expect(diamond_resolved_form(true) == resolved_form({3, 3}), "simplified diamond is <3.3>");
}

void insertion_suite(Probe& p) {
  using S = TriangleSide;
  constexpr Sign Pos = Sign::Positive, Neg = Sign::Negative;
  using E = InsertionEffect;
  struct Case {
    std::vector<Insertion> ins;
    E effect;
    const char* expr;
  };
  const std::vector<Case> cases{
      {{{S::XZ, Pos}}, E::NoContradiction, "z"},
      {{{S::XZ, Neg}}, E::TrivialContradictionEscape, "false"},
      {{{S::XY, Pos}}, E::NoContradiction, "!z"},
      {{{S::XY, Neg}}, E::TrivialContradictionEscape, "false"},
      {{{S::YZ, Pos}}, E::NoContradiction, "!z"},
      {{{S::YZ, Neg}}, E::TrivialContradictionEscape, "false"},
      {{{S::XY, Pos}, {S::XZ, Pos}}, E::Tautology, "true"},
      {{{S::XY, Pos}, {S::XZ, Neg}}, E::TrivialContradictionEscape, "false"},
      {{{S::XY, Neg}, {S::XZ, Pos}}, E::TrivialContradictionEscape, "false"},
      {{{S::XY, Neg}, {S::XZ, Neg}}, E::TrivialContradictionEscape, "false"},
      {{{S::XZ, Pos}, {S::YZ, Pos}}, E::Tautology, "true"},
      {{{S::XZ, Pos}, {S::YZ, Neg}}, E::TrivialContradictionEscape, "false"},
      {{{S::XZ, Neg}, {S::YZ, Pos}}, E::TrivialContradictionEscape, "false"},
      {{{S::XZ, Neg}, {S::YZ, Neg}}, E::TrivialContradictionEscape, "false"},
      {{{S::XY, Pos}, {S::YZ, Pos}}, E::NoContradiction, "!z"},
      {{{S::XY, Pos}, {S::YZ, Neg}}, E::NoContradiction, "!z"},
      {{{S::XY, Neg}, {S::YZ, Pos}}, E::TrivialContradictionEscape, "false"},
      {{{S::XY, Neg}, {S::YZ, Neg}}, E::TrivialContradictionEscape, "false"},
  };
  for (const auto& c : cases) {
    const InsertionReport r = insertion_effect(c.ins);
    std::string name;
    for (const auto& i : c.ins) name += std::string(to_string(i.side)) + std::string(to_string(i.sign)) + " ";
    p.expect(r.effect == c.effect, name + "effect");
    p.expect(to_string(r.expression) == c.expr, name + "expression");
    if (c.effect == E::TrivialContradictionEscape) {
      p.expect(r.escape.has_value() && !propagate(r.graph, r.escape->assignment).at("x"), name + "escape witness");
      const bool raw_contradictory = !r.raw.is_falsum() && simplify_dnf(r.raw).is_falsum();
      p.expect(raw_contradictory, name + "raw form is a contradiction");
    }
  }
}

bool statuses_exclusive(const RefGraph& g, const NodeId& id, Probe& p) {
  const ModelSet pos = models_of(g, id, Polarity::Pos), neg = models_of(g, id, Polarity::Neg);
  p.expect(!(pos.empty() && neg.empty()), "C1 and C2 together at " + id);
  return partition_check(g, id);
}

void finite_partition(Probe& p) {
  gen::Rng rng(gen::seed());
  std::size_t graphs = 0, max_sinks = 0;
  for (int k = 0; k < 200; ++k) {
    const double density = 0.08 + 0.03 * static_cast<double>(gen::below(rng, 10));
    const RefGraph g = gen::refgraph(rng, 4 + gen::below(rng, 17), 10, density);
    max_sinks = std::max(max_sinks, g.sinks().size());
    p.expect(g.sinks().size() <= 10, "sink bound");
    for (const auto& id : g.nodes()) p.expect(statuses_exclusive(g, id, p), "partition at " + id);
    ++graphs;
  }
  for (std::size_t n = 2; n <= 8; ++n) {
    const RefGraph y = yablo_truncation(n);
    for (const auto& id : y.nodes()) p.expect(statuses_exclusive(y, id, p), "truncation partition");
    ++graphs;
  }
  p.note(std::to_string(graphs) + " graphs, up to " + std::to_string(max_sinks) + " sinks");
}

void truncation_status(Probe& p) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const RefGraph y = yablo_truncation(n);
    for (std::size_t i = 0; i + 1 < n || i == 0; ++i) {
      const NodeId id = yablo_node(i);
      p.expect(check_status(y, id).kind == StatusKind::C1Holds, "C1 at " + id + " in YS" + std::to_string(n));
      const ModelSet neg = models_of(y, id, Polarity::Neg);
      p.expect(neg.size() == neg.universe_size(), "M(neg) = U at " + id);
      p.expect(oracle::models(y, id, true).empty(), "oracle agrees at " + id);
    }
  }
}

void negation_oracle(Probe& p) {
  const Dnf four = negate_dnf(D("(!x1 & !x2) | (!x3 & !x4)"));
  p.expect(four == D("(x1 & x3) | (x1 & x4) | (x2 & x3) | (x2 & x4)"), "four-component example");
  gen::Rng rng(gen::seed() + 1);
  std::set<std::string> vars;
  for (std::size_t i = 0; i < 6; ++i) vars.insert(gen::var_name(i));
  for (int k = 0; k < 1000; ++k) {
    const Dnf d = gen::dnf(rng, 1 + gen::below(rng, 6));
    const Dnf n = negate_dnf(d);
    bool ok = true;
    oracle::for_each_assignment(vars, [&](const auto& env) { ok = ok && oracle::eval(n, env) != oracle::eval(d, env); });
    p.expect(ok, "complement of " + to_string(d));
  }
}

void conjecture(Probe& p) {
  std::size_t successes = 0;
  auto verify = [&](const BareDag& target, std::size_t n, const SearchResult& r, const std::string& what) {
    if (!r.injection) return;
    ++successes;
    p.expect(check_injection(target, n, *r.injection).ok, what + " passes the checker");
    const RefGraph g = extend_interpretation(target, *r.injection);
    p.expect(verify_extension(g, *r.injection).ok(), what + " extension keeps xi");
  };
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t k = 0; k <= 2; ++k) {
      const BareDag t = BareDag::from_graph(yablo_truncation(n + k));
      const SearchResult r = find_injection(t, n);
      const std::string what = "YS" + std::to_string(n) + " into YS" + std::to_string(n + k);
      p.expect(r.outcome == SearchOutcome::Found, what + " found");
      verify(t, n, r, what);
    }
  for (std::size_t len = 2; len <= 10; ++len) {
    const SearchResult r = find_injection(bare_chain(len), 2);
    p.expect(r.outcome == SearchOutcome::Absent, "chain " + std::to_string(len) + " absent");
  }
  gen::Rng rng(gen::seed() + 2);
  std::size_t compared = 0, skipped = 0, found = 0;
  for (int k = 0; k < 150; ++k) {
    const std::size_t nodes = 5 + gen::below(rng, 6);
    const BareDag d = gen::dag(rng, nodes, 0.2 + 0.05 * static_cast<double>(gen::below(rng, 5)));
    for (std::size_t n : {2u, 3u}) {
      if (n == 3 && nodes > 8) continue;
      const oracle::Verdict v = oracle::injection_exists(d, n, 3'000'000);
      if (v == oracle::Verdict::TooLarge) {
        ++skipped;
        continue;
      }
      const SearchResult r = find_injection(d, n);
      ++compared;
      found += v == oracle::Verdict::Found;
      p.expect(r.outcome == (v == oracle::Verdict::Found ? SearchOutcome::Found : SearchOutcome::Absent),
               "brute-force agreement");
      verify(d, n, r, "random target");
    }
  }
  p.expect(compared >= 150, "enough brute-force comparisons");
  p.note(std::to_string(compared) + " brute-force comparisons (" + std::to_string(found) + " found, " +
         std::to_string(skipped) + " skipped as too large), " + std::to_string(successes) + " extensions verified");
}

void fixtures(Probe& p) {
  const RefGraph gamma = parse_refgraph("x = !y & !z\ny = !z\n");
  const RefGraph gamma_prime = parse_refgraph("x = !y & !z\ny = !z & !y'\n");
  p.expect(models_of(gamma, "x", Polarity::Pos).empty(), "triangle contradictory");
  p.expect(!models_of(gamma, "x", Polarity::Neg).empty(), "triangle negation possible");
  p.expect(enumerate_paths(gamma, "x", "z").size() == 2, "triangle has two paths to z");
  p.expect(!models_of(gamma_prime, "x", Polarity::Pos).empty(), "extended triangle not contradictory");
  p.expect(node_model_expression(gamma_prime, "x") == D("y' & !z"), "extended triangle expression");

  const RefGraph rebranch = parse_refgraph("x0 = !x1 & x2\nx1 = x2\nx2 = !x3 & x4\nx3 = x4\n");
  const auto ps = enumerate_paths(rebranch, "x0", "x4");
  p.expect(ps.size() == 4, "four paths");
  p.expect(find_contradictory_cells(rebranch, "x0", "x4").size() == 4, "four contradictory cells");
  p.expect(contradiction_loop_check(ps).odd_cycle_witness.has_value(), "odd contradiction loop");

  const RefGraph postponed = parse_refgraph(
      "x0 = !x1 & !x3.2.2 & !x2''.1\nx1 = !x2 & x2''\nx2 = !x2.2 & !v\n"
      "x2.2 = !x3.2.2 & !w\nw = !x3.2.2\nx2'' = !x2''.1\n");
  std::map<NodeId, CellSafety> safety;
  for (const auto& e : composition_audit(postponed, "x0").endpoints) safety[e.endpoint] = e.label;
  p.expect(safety.count("x3.2.2") && safety["x3.2.2"] == CellSafety::Safe, "x3.2.2 safe");
  p.expect(safety.count("x2''.1") && safety["x2''.1"] == CellSafety::EscapeHazard, "x2''.1 escape hazard");

  constexpr Sign Pos = Sign::Positive, Neg = Sign::Negative;
  for (Sign xy : {Pos, Neg})
    for (Sign yz : {Pos, Neg})
      for (Sign xz : {Pos, Neg}) {
        const int negs = (xy == Neg) + (yz == Neg) + (xz == Neg);
        const TriangleVerdict expect = negs % 2 == 0 ? TriangleVerdict::NoXPlusContradiction
                                       : negs == 3   ? TriangleVerdict::YabloViable
                                                     : TriangleVerdict::EscapeAtXMinus;
        const TriangleAudit a = triangle_sign_audit(xy, yz, xz);
        p.expect(a.verdict == expect, "sign audit verdict");
        p.expect(a.reducible_by_cheating == (negs == 1 && xy == Neg), "sign audit cheating flag");
      }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "three-valued algebra tables", 1, truth_tables},
      {2, "variant classification sets", 1000, variant_table},
      {3, "construction ledger", 1000, construction_ledger},
      {4, "resolved forms and diamond", 1000, resolved_forms},
      {5, "tautology insertion suite", 1000, insertion_suite},
      {6, "finite partition property", 60000, finite_partition},
      {7, "truncation statuses", 30000, truncation_status},
      {8, "choice-function negation oracle", 10000, negation_oracle},
      {9, "injection search and extension", 120000, conjecture},
      {10, "fixture suite", 1000, fixtures},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Probe probe;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body(probe);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = ms < c.limit_ms;
    const bool pass = error.empty() && probe.ok() && in_time;
    failed += !pass;
    std::printf("%s [%d] %s: %.3f ms (limit %.0f ms); %s%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), ms,
                c.limit_ms, probe.summary().c_str(), error.empty() ? "" : "; exception: ", error.c_str());
  }
  std::printf("%d/%zu criteria passed (seed %llu)\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              static_cast<unsigned long long>(gen::seed()));
  return failed == 0 ? 0 : 1;
}
