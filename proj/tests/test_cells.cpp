#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "refgraph/cells.hpp"
#include "refgraph/errors.hpp"
#include "refgraph/io.hpp"

using namespace refgraph;

namespace {

constexpr Sign P = Sign::Positive, N = Sign::Negative;

std::set<std::string> labels_where(bool (*pred)(const VariantReport&)) {
  std::set<std::string> out;
  for (const auto& r : classify_all())
    if (pred(r)) out.insert(label(r.variant));
  return out;
}

std::set<std::string> with_z(int z, std::initializer_list<int> ys) {
  std::set<std::string> out;
  for (int y : ys) out.insert(label({z, y}));
  return out;
}

std::set<std::string> unite(std::initializer_list<std::set<std::string>> parts) {
  std::set<std::string> out;
  for (const auto& p : parts) out.insert(p.begin(), p.end());
  return out;
}

std::string expr(const std::vector<Insertion>& ins) { return to_string(insertion_effect(ins).expression); }

}  // namespace

TEST_CASE("eighteen variants") {
  const auto all = all_variants();
  CHECK(all.size() == 18);
  CHECK(label(all.front()) == "<1.1>");
  CHECK(label(all.back()) == "<3.6>");
  CHECK(to_string(knee_formula({3, 3})) == "!z & $y_xi");
  CHECK(to_string(knee_formula({1, 5})) == "!z | false");
  CHECK(foot_formula({3, 1}) == Formula::frontier(kZXi));
}

TEST_CASE("single variant verdicts") {
  const VariantReport yc = classify_variant({3, 3});
  CHECK(yc.c221);
  CHECK(yc.c222);
  CHECK(yc.c224);
  CHECK(yc.all_ok());
  CHECK(yc.x_value3 == Truth3::Xi);

  const VariantReport classical = classify_variant({1, 2});
  CHECK_FALSE(classical.c224);
  CHECK(classical.x_value3 == Truth3::F);

  const VariantReport r32 = classify_variant({3, 2});
  CHECK(r32.c224);
  CHECK_FALSE(r32.c221);
}

TEST_CASE("classification sets") {
  const auto c221 = labels_where([](const VariantReport& r) { return r.c221; });
  const auto c222_fail = labels_where([](const VariantReport& r) { return !r.c222; });
  const auto c224 = labels_where([](const VariantReport& r) { return r.c224; });
  const auto ok = labels_where([](const VariantReport& r) { return r.all_ok(); });

  const auto c221_expect = unite({with_z(1, {1, 3, 4, 5, 6}), with_z(2, {1, 3, 4, 5, 6}), with_z(3, {1, 3, 4, 5, 6})});
  CHECK(c221 == c221_expect);
  const auto c222_expect =
      unite({with_z(1, {1, 2, 3, 4, 5, 6}), with_z(2, {1, 4, 5, 6}), with_z(3, {4})});
  CHECK(c222_fail == c222_expect);
  CHECK(c224 == unite({with_z(2, {3}), with_z(3, {1, 2, 3, 5, 6})}));
  CHECK(ok == unite({with_z(2, {3}), with_z(3, {1, 3, 5, 6})}));

  // The knee condition excludes nothing the xi condition has not already excluded.
  for (const auto& l : c222_fail) CHECK(c224.count(l) == 0);
}

TEST_CASE("resolved forms") {
  CHECK(to_string(resolved_form({3, 3})) == "!$y_xi & !$z_xi");
  CHECK(to_string(resolved_form({2, 3})) == "!$y_xi");
  CHECK(to_string(resolved_form({3, 1})) == "$z_xi & !$z_xi");
  CHECK(to_string(resolved_form({3, 5})) == "$z_xi & !$z_xi");
  CHECK(to_string(resolved_form({3, 6})) == "!$y_xi & $z_xi & !$z_xi");
  CHECK_THROWS_AS(resolved_form({3, 2}), Error);
  CHECK_THROWS_AS(resolved_form({1, 1}), Error);
}

TEST_CASE("resolve_contradictions keeps a lone contradiction") {
  const Dnf both = to_dnf(parse_formula("($z & !$z) | !$y"));
  CHECK(to_string(resolve_contradictions(both)) == "!$y");
  const Dnf lone = to_dnf(parse_formula("($z & !$z) | ($z & !$z & $y)"));
  CHECK(to_string(resolve_contradictions(lone)) == "$z & !$z");
}

TEST_CASE("diamond") {
  const Formula full = diamond_head(false);
  const Dnf expanded = to_dnf(full);
  CHECK(expanded.size() == 4);
  CHECK(oracle::same_truth_table(expanded, parse_formula("(!$y_xi | $z_xi) & (!$y'_xi | !$z_xi)")));
  CHECK(to_string(diamond_resolved_form(false)) ==
        "!$y'_xi & !$y_xi | !$y'_xi & $z_xi | !$y_xi & !$z_xi");
  CHECK(to_string(diamond_resolved_form(true)) == "!$y_xi & !$z_xi");
  CHECK(diamond_resolved_form(true) == resolved_form({3, 3}));
}

TEST_CASE("xi survives composition of ok cells") {
  std::vector<CellVariant> ok;
  for (const auto& r : classify_all())
    if (r.all_ok()) ok.push_back(r.variant);
  REQUIRE(ok.size() == 5);
  int counter = 0;
  for (const auto& outer : ok) {
    for (const auto& inner : ok) {
      const Formula inner_form = resolved_form(inner);
      const Formula composed = substitute(resolved_form(outer), [&](Formula::Kind k, const std::string&) {
        if (k != Formula::Kind::Frontier) return std::optional<Formula>{};
        const std::string suffix = "#" + std::to_string(++counter);
        return std::optional<Formula>{substitute(inner_form, [&](Formula::Kind kk, const std::string& t) {
          if (kk != Formula::Kind::Frontier) return std::optional<Formula>{};
          return std::optional<Formula>{Formula::frontier(t + suffix)};
        })};
      });
      FrontierValues fv;
      for (const auto& t : composed.frontier_tags()) fv[t] = Truth3::Xi;
      CHECK(eval3(composed, {}, fv) == Truth3::Xi);
    }
  }
}

TEST_CASE("triangle sign audit") {
  CHECK(triangle_sign_audit(N, N, N).verdict == TriangleVerdict::YabloViable);
  CHECK(triangle_sign_audit(P, N, P).verdict == TriangleVerdict::EscapeAtXMinus);
  CHECK(triangle_sign_audit(P, P, P).verdict == TriangleVerdict::NoXPlusContradiction);
  int viable = 0;
  for (Sign xy : {P, N})
    for (Sign yz : {P, N})
      for (Sign xz : {P, N}) {
        const int negs = (xy == N) + (yz == N) + (xz == N);
        const TriangleAudit a = triangle_sign_audit(xy, yz, xz);
        if (negs % 2 == 0) CHECK(a.verdict == TriangleVerdict::NoXPlusContradiction);
        if (negs == 1) {
          CHECK(a.verdict == TriangleVerdict::EscapeAtXMinus);
          CHECK(a.reducible_by_cheating == (xy == N));
        }
        viable += a.verdict == TriangleVerdict::YabloViable;
      }
  CHECK(viable == 1);
}

TEST_CASE("insert_tautology") {
  const RefGraph t = yablo_triangle();
  const NodeId xz = inserted_node_name(t, "x", "z");
  CHECK(xz == "xz");
  const RefGraph pos = insert_tautology(t, "x", "z", P);
  CHECK_NOTHROW(pos.validate());
  CHECK(pos.has_arrow("x", xz));
  CHECK_FALSE(pos.has_arrow("x", "z"));
  CHECK(pos.has_arrow(xz, "z"));
  CHECK(to_string(node_model_expression(pos, "x")) == "z");
  CHECK(node_model_expression(insert_tautology(t, "x", "z", N), "x").is_falsum());
  CHECK_THROWS_AS(insert_tautology(t, "z", "x", P), GraphError);
  const RefGraph twice = insert_tautology(pos, xz, "z", P);
  CHECK(twice.node_count() == 5);
}

TEST_CASE("single insertions") {
  using S = TriangleSide;
  CHECK(expr({{S::XZ, P}}) == "z");
  CHECK(expr({{S::XY, P}}) == "!z");
  CHECK(expr({{S::YZ, P}}) == "!z");
  for (S side : {S::XY, S::XZ, S::YZ}) {
    const InsertionReport r = insertion_effect({{side, N}});
    CHECK(r.effect == InsertionEffect::TrivialContradictionEscape);
    CHECK(r.expression.is_falsum());
    CHECK(to_string(simplify_dnf(r.raw)) == "false");
    REQUIRE(r.escape.has_value());
    CHECK(propagate(r.graph, r.escape->assignment).at("x") == false);
    CHECK(insertion_effect({{side, P}}).effect == InsertionEffect::NoContradiction);
  }
}

TEST_CASE("combined insertions") {
  using S = TriangleSide;
  using E = InsertionEffect;
  for (Sign a : {P, N})
    for (Sign b : {P, N}) {
      const E both_pos = (a == P && b == P) ? E::Tautology : E::TrivialContradictionEscape;
      CHECK(insertion_effect({{S::XY, a}, {S::XZ, b}}).effect == both_pos);
      CHECK(insertion_effect({{S::XZ, a}, {S::YZ, b}}).effect == both_pos);
      const E xy_decides = a == P ? E::NoContradiction : E::TrivialContradictionEscape;
      CHECK(insertion_effect({{S::XY, a}, {S::YZ, b}}).effect == xy_decides);
      if (a == P) CHECK(expr({{S::XY, a}, {S::YZ, b}}) == "!z");
    }
}

TEST_CASE("insertions never leave a contradiction without escape") {
  using S = TriangleSide;
  const std::vector<S> sides{S::XY, S::XZ, S::YZ};
  for (unsigned mask = 1; mask < 8; ++mask) {
    for (unsigned signs = 0; signs < 8; ++signs) {
      std::vector<Insertion> ins;
      for (unsigned k = 0; k < 3; ++k)
        if (mask & (1u << k)) ins.push_back({sides[k], (signs >> k) & 1 ? N : P});
      const InsertionReport r = insertion_effect(ins);
      if (r.expression.is_falsum()) {
        CHECK(r.effect == InsertionEffect::TrivialContradictionEscape);
        CHECK(r.escape.has_value());
      } else {
        CHECK(r.effect != InsertionEffect::TrivialContradictionEscape);
      }
    }
  }
}
