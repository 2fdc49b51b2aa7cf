#pragma once

#include <optional>
#include <string>
#include <vector>

#include "refgraph/dnf.hpp"
#include "refgraph/graph.hpp"
#include "refgraph/semantics.hpp"
#include "refgraph/truth3.hpp"

namespace refgraph {

/// One of the 18 triangle variants x = !y & !z. `z_case`: 1 z = T, 2 z = F,
/// 3 z = xi. `y_case`: 1 y = !z & T, 2 y = !z & F, 3 y = !z & y_xi,
/// 4 y = !z | T, 5 y = !z | F, 6 y = !z | y_xi.
struct CellVariant {
  int z_case = 3;
  int y_case = 3;

  friend auto operator<=>(const CellVariant&, const CellVariant&) = default;
};

std::vector<CellVariant> all_variants();
/// "<z.y>", e.g. "<3.3>".
std::string label(const CellVariant& v);

inline const std::string kYXi = "y_xi";
inline const std::string kY2Xi = "y'_xi";
inline const std::string kZXi = "z_xi";

/// Formula of the knee over the variable `z` (frontier leaf `y_xi` for cases 3 and 6).
Formula knee_formula(const CellVariant& v);
/// Value of the foot as a formula: true, false or the frontier leaf `z_xi`.
Formula foot_formula(const CellVariant& v);

struct VariantReport {
  CellVariant variant;
  /// x true is locally contradictory (frontier leaves replaced by their connective's unit).
  bool c221 = false;
  /// y | z is not T, so every branch of !x still has to meet a contradiction.
  bool c222 = false;
  /// x evaluates to xi.
  bool c224 = false;
  Truth3 x_value3 = Truth3::F;
  Truth3 y_value3 = Truth3::F;
  /// x in terms of frontier leaves.
  Formula resolved_x = Formula::bottom();

  bool all_ok() const { return c221 && c222 && c224; }
};

VariantReport classify_variant(const CellVariant& v);
std::vector<VariantReport> classify_all();

/// Drops complementary conjuncts as simplify_dnf() does, unless nothing else
/// would remain; then the (subsumption-reduced) contradictions are kept, since
/// over frontier leaves `z_xi & !z_xi` is a value of its own rather than false.
Dnf resolve_contradictions(const Dnf& d);

/// Symbolic x of an all-ok variant. Throws Error for any other variant.
Formula resolved_form(const CellVariant& v);

/// Diamond x = !y & !y', y = y_xi & !z, y' = y'_xi & z (full) or y' = z | F
/// (simplified), z = z_xi, with y, y' and z substituted into x.
Formula diamond_head(bool simplified);
/// diamond_head distributed, contradictory disjuncts dropped as in resolve_contradictions().
Formula diamond_resolved_form(bool simplified);

enum class TriangleVerdict : unsigned char { NoXPlusContradiction, EscapeAtXMinus, YabloViable };

struct TriangleAudit {
  TriangleVerdict verdict;
  /// The x-y-only negative triangle can be turned into a Yablo cell by
  /// continuing the foot negatively; flagged here, never constructed.
  bool reducible_by_cheating = false;
};

/// Sign audit of a triangle with sides (x-y, y-z, x-z), all nodes conjunctions.
TriangleAudit triangle_sign_audit(Sign xy, Sign yz, Sign xz);

/// x = !y & !z, y = !z on nodes x, y, z.
RefGraph yablo_triangle();

/// Replaces `from -> to` by `from -> ab -> to` where ab = to | !to. The
/// literal on `to` in the formula of `from` becomes a literal on ab with sign
/// `sign` (the opposite sign where `to` occurred with the other polarity).
/// The new node is named from+to, primed until unique. Throws GraphError if
/// the arrow is absent.
RefGraph insert_tautology(const RefGraph& g, const NodeId& from, const NodeId& to, Sign sign);

/// Name insert_tautology() will give the inserted node.
NodeId inserted_node_name(const RefGraph& g, const NodeId& from, const NodeId& to);

enum class TriangleSide : unsigned char { XY, XZ, YZ };

struct Insertion {
  TriangleSide side;
  /// Polarity with which the inserted node enters x: the value of the path
  /// from the head x to the inserted node.
  Sign sign;
};

enum class InsertionEffect : unsigned char { NoContradiction, TrivialContradictionEscape, Tautology };

struct InsertionReport {
  InsertionEffect effect;
  RefGraph graph;
  /// node_model_expression(x) of the modified triangle.
  Dnf expression;
  /// x fully expanded and distributed, before any simplification.
  Dnf raw;
  std::optional<EscapeWitness> escape;
};

InsertionReport insertion_effect(const std::vector<Insertion>& insertions);

/// The formula of `node` with every non-sink node below it substituted by its formula.
Formula expand_formula(const RefGraph& g, const NodeId& node);

std::string_view to_string(TriangleVerdict v);
std::string_view to_string(InsertionEffect e);
std::string_view to_string(TriangleSide s);

}  // namespace refgraph
