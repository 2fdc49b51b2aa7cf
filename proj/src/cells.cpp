#include "refgraph/cells.hpp"

#include <algorithm>

#include "refgraph/errors.hpp"

namespace refgraph {

std::vector<CellVariant> all_variants() {
  std::vector<CellVariant> out;
  for (int z = 1; z <= 3; ++z)
    for (int y = 1; y <= 6; ++y) out.push_back({z, y});
  return out;
}

std::string label(const CellVariant& v) {
  return "<" + std::to_string(v.z_case) + "." + std::to_string(v.y_case) + ">";
}

Formula knee_formula(const CellVariant& v) {
  const Formula not_z = Formula::neg_var("z");
  switch (v.y_case) {
    case 1:
      return not_z & Formula::top();
    case 2:
      return not_z & Formula::bottom();
    case 3:
      return not_z & Formula::frontier(kYXi);
    case 4:
      return not_z | Formula::top();
    case 5:
      return not_z | Formula::bottom();
    case 6:
      return not_z | Formula::frontier(kYXi);
  }
  throw Error("y case must be in 1..6, got " + std::to_string(v.y_case));
}

Formula foot_formula(const CellVariant& v) {
  switch (v.z_case) {
    case 1:
      return Formula::top();
    case 2:
      return Formula::bottom();
    case 3:
      return Formula::frontier(kZXi);
  }
  throw Error("z case must be in 1..3, got " + std::to_string(v.z_case));
}

namespace {

Truth3 foot_value(const CellVariant& v) {
  return v.z_case == 1 ? Truth3::T : v.z_case == 2 ? Truth3::F : Truth3::Xi;
}

// x = !y & !z with y and z given as formulas.
Formula head_over(const Formula& y, const Formula& z) { return negate(y) & negate(z); }

Formula symbolic_head(const CellVariant& v) {
  const Formula z = foot_formula(v);
  const Formula y = substitute_vars(knee_formula(v), {{"z", z}});
  return head_over(y, z);
}

}  // namespace

VariantReport classify_variant(const CellVariant& v) {
  VariantReport r;
  r.variant = v;

  const Formula y = knee_formula(v);
  const Assignment3 at{{"z", foot_value(v)}};
  const FrontierValues xi{{kYXi, Truth3::Xi}};
  r.y_value3 = eval3(y, at, xi);
  r.x_value3 = eval3(head_over(y, Formula::var("z")), at, xi);
  r.c224 = r.x_value3 == Truth3::Xi;
  r.c222 = or3(r.y_value3, foot_value(v)) != Truth3::T;

  // Local contradiction for x true: the foot is a free variable and the
  // frontier leaves drop out as units of their connective.
  const Formula local = head_over(neutralize_frontier(y), Formula::var("z"));
  r.c221 = !eval2(local, {{"z", false}}) && !eval2(local, {{"z", true}});

  r.resolved_x = to_formula(resolve_contradictions(to_dnf(symbolic_head(v))));
  return r;
}

std::vector<VariantReport> classify_all() {
  std::vector<VariantReport> out;
  for (const auto& v : all_variants()) out.push_back(classify_variant(v));
  return out;
}

Dnf resolve_contradictions(const Dnf& d) {
  Dnf s = simplify_dnf(d);
  if (!s.is_falsum() || d.is_falsum()) return s;
  std::vector<Conjunct> kept;
  std::vector<Conjunct> cs = d.disjuncts();
  std::sort(cs.begin(), cs.end(),
            [](const Conjunct& a, const Conjunct& b) { return a.size() < b.size(); });
  for (const auto& c : cs) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const Conjunct& k) {
      return std::includes(c.begin(), c.end(), k.begin(), k.end());
    });
    if (!covered) kept.push_back(c);
  }
  return Dnf(std::move(kept));
}

Formula resolved_form(const CellVariant& v) {
  const VariantReport r = classify_variant(v);
  if (!r.all_ok()) {
    throw Error("variant " + label(v) + " does not satisfy all three cell conditions");
  }
  return r.resolved_x;
}

Formula diamond_head(bool simplified) {
  const Formula z = Formula::frontier(kZXi);
  const Formula y = Formula::frontier(kYXi) & negate(z);
  const Formula y2 = simplified ? (z | Formula::bottom()) : (Formula::frontier(kY2Xi) & z);
  return negate(y) & negate(y2);
}

Formula diamond_resolved_form(bool simplified) {
  return to_formula(resolve_contradictions(to_dnf(diamond_head(simplified))));
}

TriangleAudit triangle_sign_audit(Sign xy, Sign yz, Sign xz) {
  const int negatives = (xy == Sign::Negative) + (yz == Sign::Negative) + (xz == Sign::Negative);
  if (negatives % 2 == 0) return {TriangleVerdict::NoXPlusContradiction, false};
  if (negatives == 3) return {TriangleVerdict::YabloViable, false};
  // One negative side. With a positive x-y the knee is a conjunction under
  // x- as well and both paths stay open. With the negative side at x-y the
  // knee's own contradiction would need a third negative arrow.
  return {TriangleVerdict::EscapeAtXMinus, xy == Sign::Negative};
}

RefGraph yablo_triangle() {
  RefGraph g;
  g.define("x", Formula::neg_var("y") & Formula::neg_var("z"));
  g.define("y", Formula::neg_var("z"));
  return g;
}

NodeId inserted_node_name(const RefGraph& g, const NodeId& from, const NodeId& to) {
  NodeId name = from + to;
  while (g.has_node(name)) name += "'";
  return name;
}

RefGraph insert_tautology(const RefGraph& g, const NodeId& from, const NodeId& to, Sign sign) {
  const auto arrow_sign = g.arrow_sign(from, to);
  if (!arrow_sign) throw GraphError("no arrow '" + from + "' -> '" + to + "' to insert into");
  RefGraph out = g;
  const NodeId ab = inserted_node_name(g, from, to);
  out.add_node(ab);
  out.remove_arrow(from, to);
  out.add_arrow(from, ab, sign);
  out.add_arrow(ab, to, Sign::Positive);
  out.set_formula(ab, Formula::var(to) | Formula::neg_var(to));

  auto rewrite = [&](auto&& self, const Formula& f) -> Formula {
    if (f.kind() == Formula::Kind::Literal && f.name() == to) {
      return Formula::literal(ab, compose_value(compose_value(f.sign(), *arrow_sign), sign));
    }
    if (f.is_leaf() || f.is_constant()) return f;
    std::vector<Formula> ops;
    for (const auto& op : f.operands()) ops.push_back(self(self, op));
    return f.kind() == Formula::Kind::And ? Formula::conj(std::move(ops))
                                          : Formula::disj(std::move(ops));
  };
  out.set_formula(from, rewrite(rewrite, *g.formula(from)));
  return out;
}

Formula expand_formula(const RefGraph& g, const NodeId& node) {
  const auto& f = g.formula(node);
  if (!f) return Formula::var(node);
  return substitute(*f, [&](Formula::Kind kind, const std::string& name) -> std::optional<Formula> {
    if (kind != Formula::Kind::Literal || g.is_sink(name)) return std::nullopt;
    return expand_formula(g, name);
  });
}

InsertionReport insertion_effect(const std::vector<Insertion>& insertions) {
  if (insertions.empty()) throw Error("insertion_effect needs at least one insertion");
  RefGraph g = yablo_triangle();
  for (const auto& ins : insertions) {
    NodeId from = "x", to = "z";
    Sign prefix = Sign::Positive;
    switch (ins.side) {
      case TriangleSide::XY:
        to = "y";
        break;
      case TriangleSide::XZ:
        break;
      case TriangleSide::YZ:
        from = "y";
        prefix = Sign::Negative;
        break;
    }
    g = insert_tautology(g, from, to, compose_value(prefix, ins.sign));
  }
  InsertionReport r{InsertionEffect::NoContradiction, g, node_model_expression(g, "x"),
                    to_dnf(expand_formula(g, "x")), std::nullopt};
  if (r.expression.is_falsum()) {
    r.effect = InsertionEffect::TrivialContradictionEscape;
    r.escape = escape_search(g, "x");
  } else if (r.expression == Dnf::verum()) {
    r.effect = InsertionEffect::Tautology;
  }
  return r;
}

std::string_view to_string(TriangleVerdict v) {
  switch (v) {
    case TriangleVerdict::NoXPlusContradiction:
      return "NoXPlusContradiction";
    case TriangleVerdict::EscapeAtXMinus:
      return "EscapeAtXMinus";
    case TriangleVerdict::YabloViable:
      return "YabloViable";
  }
  return "?";
}

std::string_view to_string(InsertionEffect e) {
  switch (e) {
    case InsertionEffect::NoContradiction:
      return "NoContradiction";
    case InsertionEffect::TrivialContradictionEscape:
      return "TrivialContradictionEscape";
    case InsertionEffect::Tautology:
      return "Tautology";
  }
  return "?";
}

std::string_view to_string(TriangleSide s) {
  switch (s) {
    case TriangleSide::XY:
      return "xy";
    case TriangleSide::XZ:
      return "xz";
    case TriangleSide::YZ:
      return "yz";
  }
  return "?";
}

}  // namespace refgraph
