#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "refgraph/dnf.hpp"
#include "refgraph/errors.hpp"
#include "refgraph/formula.hpp"
#include "refgraph/io.hpp"
#include "refgraph/truth3.hpp"

using namespace refgraph;

namespace {

constexpr Truth3 T = Truth3::T, F = Truth3::F, X = Truth3::Xi;

Dnf D(const char* text) { return to_dnf(parse_formula(text)); }

}  // namespace

TEST_CASE("three-valued connectives match the hand tables") {
  for (auto a : kAllTruth3) {
    CHECK(not3(a) == oracle::t_not(a));
    for (auto b : kAllTruth3) {
      CHECK(and3(a, b) == oracle::t_and(a, b));
      CHECK(or3(a, b) == oracle::t_or(a, b));
    }
  }
  CHECK(and3(X, T) == X);
  CHECK(and3(X, F) == F);
  CHECK(or3(X, T) == T);
  CHECK(or3(F, X) == X);
  CHECK(and3(X, X) == X);
  CHECK(or3(X, X) == X);
  CHECK(not3(X) == X);
  CHECK(not3(T) == F);
}

TEST_CASE("three-valued algebra laws") {
  for (auto a : kAllTruth3) {
    CHECK(not3(not3(a)) == a);
    CHECK(and3(a, a) == a);
    CHECK(or3(a, a) == a);
    for (auto b : kAllTruth3) {
      CHECK(and3(a, b) == and3(b, a));
      CHECK(or3(a, b) == or3(b, a));
      CHECK(and3(a, or3(a, b)) == a);
      CHECK(or3(a, and3(a, b)) == a);
      CHECK(not3(and3(a, b)) == or3(not3(a), not3(b)));
      CHECK(not3(or3(a, b)) == and3(not3(a), not3(b)));
      for (auto c : kAllTruth3) {
        CHECK(and3(a, and3(b, c)) == and3(and3(a, b), c));
        CHECK(or3(a, or3(b, c)) == or3(or3(a, b), c));
      }
    }
  }
}

TEST_CASE("truth value text") {
  for (auto a : kAllTruth3) CHECK(parse_truth3(to_string(a)) == a);
  CHECK_FALSE(parse_truth3("maybe").has_value());
}

TEST_CASE("formula construction keeps negation on leaves") {
  const Formula f = !(Formula::var("a") & (Formula::neg_var("b") | Formula::frontier("t")));
  CHECK(to_string(canonicalize(f)) == "!$t & b | !a");
  CHECK(negate(negate(f)) == f);
  CHECK(f.variables() == std::set<NodeId>{"a", "b"});
  CHECK(f.frontier_tags() == std::set<std::string>{"t"});
  CHECK(negate(Formula::top()) == Formula::bottom());
}

TEST_CASE("eval2") {
  const Formula f = parse_formula("!x1 & !x2");
  CHECK(eval2(f, {{"x1", false}, {"x2", false}}));
  CHECK_FALSE(eval2(f, {{"x1", true}, {"x2", false}}));
  const Formula contradiction = parse_formula("z & !z");
  CHECK_FALSE(eval2(contradiction, {{"z", true}}));
  CHECK_FALSE(eval2(contradiction, {{"z", false}}));
  CHECK(eval2(parse_formula("x2 | x3"), {{"x2", false}, {"x3", true}}));
  CHECK_THROWS_AS(eval2(f, {{"x1", true}}), FormulaError);
  CHECK_THROWS_AS(eval2(parse_formula("a & $t"), {{"a", true}}), FormulaError);
}

TEST_CASE("eval3 on frontier formulas") {
  const Formula y = parse_formula("!z & $y_xi");
  CHECK(eval3(y, {{"z", F}}, {{"y_xi", X}}) == X);
  CHECK(eval3(parse_formula("!z | $y_xi"), {{"z", F}}, {{"y_xi", X}}) == T);
  CHECK(eval3(y, {{"z", X}}, {{"y_xi", X}}) == X);
  CHECK_THROWS_AS(eval3(y, {{"z", F}}), FormulaError);
}

TEST_CASE("eval3 restricted to classical values is eval2") {
  gen::Rng rng(gen::seed());
  for (int k = 0; k < 200; ++k) {
    const Formula f = gen::formula(rng, 4, 1 + gen::below(rng, 6));
    oracle::for_each_assignment(f.variables(), [&](const auto& env) {
      Assignment2 a2(env.begin(), env.end());
      Assignment3 a3;
      for (const auto& [v, b] : env) a3[v] = from_bool(b);
      CHECK(eval3(f, a3) == from_bool(eval2(f, a2)));
      CHECK(eval2(f, a2) == oracle::eval(f, env));
    });
  }
}

TEST_CASE("to_dnf worked examples") {
  const Dnf d = D("(x2 | x3) & !x2");
  CHECK(d.size() == 2);
  CHECK(to_string(d) == "(x2 & !x2) | (!x2 & x3)");
  CHECK(to_string(simplify_dnf(d)) == "!x2 & x3");
  CHECK(D("!x1").size() == 1);
  CHECK(D("!x1").disjuncts().front().size() == 1);
  const Dnf diamond = D("(!$y_xi | z) & (!$y'_xi | !z)");
  CHECK(diamond.size() == 4);
  CHECK(oracle::same_truth_table(diamond, parse_formula("(!$y_xi | z) & (!$y'_xi | !z)")));
}

TEST_CASE("to_dnf preserves truth tables") {
  gen::Rng rng(gen::seed() + 1);
  for (int k = 0; k < 300; ++k) {
    const Formula f = gen::formula(rng, 5, 1 + gen::below(rng, 7));
    const Dnf d = to_dnf(f);
    CHECK(oracle::same_truth_table(d, f));
    CHECK(oracle::same_truth_table(simplify_dnf(d), f));
    CHECK(oracle::same_truth_table(blake_canonical_form(d), f));
  }
}

TEST_CASE("negate_dnf worked examples") {
  CHECK(to_string(negate_dnf(D("!x1 & !x2"))) == "x1 | x2");
  const Dnf four = negate_dnf(D("(!x1 & !x2) | (!x3 & !x4)"));
  CHECK(to_string(four) == "(x1 & x3) | (x1 & x4) | (x2 & x3) | (x2 & x4)");
  CHECK(negate_dnf(Dnf::verum()).is_falsum());
  CHECK(negate_dnf(Dnf::falsum()) == Dnf::verum());
}

TEST_CASE("negate_dnf is the truth-table complement") {
  gen::Rng rng(gen::seed() + 2);
  for (int k = 0; k < 500; ++k) {
    const Dnf d = gen::dnf(rng, 6);
    const Dnf n = negate_dnf(d);
    std::set<std::string> vars;
    for (std::size_t i = 0; i < 6; ++i) vars.insert(gen::var_name(i));
    oracle::for_each_assignment(vars, [&](const auto& env) { CHECK(oracle::eval(n, env) == !oracle::eval(d, env)); });
  }
}

TEST_CASE("negate_dnf enforces the product limit") {
  std::vector<Conjunct> ds;
  for (int i = 0; i < 21; ++i)
    ds.push_back(make_conjunct({Literal::var("a" + std::to_string(i)), Literal::var("b" + std::to_string(i))}));
  CHECK_THROWS_AS(negate_dnf(Dnf(ds)), LimitError);
}

TEST_CASE("simplify_dnf") {
  CHECK(to_string(simplify_dnf(D("(z & !z) | (y' & !z)"))) == "y' & !z");
  CHECK(simplify_dnf(D("x2 & !x2")).is_falsum());
  CHECK(simplify_dnf(D("(a & b) | (b & a) | a")).size() == 1);
  gen::Rng rng(gen::seed() + 3);
  for (int k = 0; k < 300; ++k) {
    const Dnf d = gen::dnf(rng, 5);
    CHECK(oracle::same_truth_table(simplify_dnf(d), d));
  }
}

TEST_CASE("dnf canonical order") {
  const Dnf d({make_conjunct({Literal::var("b"), Literal::var("a", Sign::Negative), Literal::var("a")}),
               make_conjunct({Literal::var("a")}), make_conjunct({Literal::var("a")})});
  REQUIRE(d.size() == 2);
  CHECK(to_string(d) == "a | (a & !a & b)");
}

TEST_CASE("equivalence through the Blake form") {
  CHECK(equivalent(D("(a & b) | (!a & c)"), D("(a & b) | (!a & c) | (b & c)")));
  CHECK_FALSE(equivalent(D("a"), D("a | b")));
  CHECK(is_tautology(D("a | !a")));
  CHECK(is_unsatisfiable(D("a & !a")));
  gen::Rng rng(gen::seed() + 4);
  for (int k = 0; k < 200; ++k) {
    const Dnf a = gen::dnf(rng, 4), b = gen::dnf(rng, 4);
    std::set<std::string> vars;
    for (std::size_t i = 0; i < 4; ++i) vars.insert(gen::var_name(i));
    CHECK(equivalent(a, b) == oracle::same_truth_table(a, b, vars));
  }
}
