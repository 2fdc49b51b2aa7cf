#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "refgraph/sign.hpp"
#include "refgraph/truth3.hpp"

namespace refgraph {

/// Propositional formula in negation-normal form.
///
/// Negation lives only on leaves: a Literal is a (possibly negated) node
/// variable, a Frontier leaf is a (possibly negated) placeholder for an
/// appended construction whose value is Xi. And/Or always carry at least
/// one operand; nested connectives of the same kind are flattened. General
/// negation is available through negate(), which pushes it to the leaves.
class Formula {
 public:
  enum class Kind : unsigned char { Literal, Frontier, And, Or, True, False };

  static Formula var(NodeId id) { return literal(std::move(id), Sign::Positive); }
  static Formula neg_var(NodeId id) { return literal(std::move(id), Sign::Negative); }
  static Formula literal(NodeId id, Sign sign);
  static Formula frontier(std::string tag, Sign sign = Sign::Positive);
  static Formula top();
  static Formula bottom();
  static Formula constant(bool value) { return value ? top() : bottom(); }
  /// Conjunction of `operands`. A single operand is returned unchanged.
  static Formula conj(std::vector<Formula> operands);
  static Formula disj(std::vector<Formula> operands);

  Kind kind() const { return kind_; }
  bool is_leaf() const { return kind_ == Kind::Literal || kind_ == Kind::Frontier; }
  bool is_constant() const { return kind_ == Kind::True || kind_ == Kind::False; }
  /// Variable name (Literal) or tag (Frontier); empty otherwise.
  const std::string& name() const { return name_; }
  Sign sign() const { return sign_; }
  bool positive() const { return sign_ == Sign::Positive; }
  std::span<const Formula> operands() const { return operands_; }

  /// True for a single literal or a conjunction made only of literals.
  bool is_literal_conjunction() const;
  /// Node variables mentioned anywhere (frontier tags excluded).
  std::set<NodeId> variables() const;
  std::set<std::string> frontier_tags() const;
  bool has_frontier() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Kind kind, std::string name, Sign sign, std::vector<Formula> operands);

  Kind kind_;
  std::string name_;
  Sign sign_ = Sign::Positive;
  std::vector<Formula> operands_;
};

/// De Morgan negation; constants swap, leaves flip their sign.
Formula negate(const Formula& f);

inline Formula operator!(const Formula& f) { return negate(f); }
inline Formula operator&(const Formula& a, const Formula& b) { return Formula::conj({a, b}); }
inline Formula operator|(const Formula& a, const Formula& b) { return Formula::disj({a, b}); }

using Assignment2 = std::map<NodeId, bool>;
using Assignment3 = std::map<NodeId, Truth3>;
using FrontierValues = std::map<std::string, Truth3>;

/// Classical evaluation. Throws FormulaError on an unbound variable or a frontier leaf.
bool eval2(const Formula& f, const Assignment2& assignment);

/// Three-valued evaluation with and3/or3/not3. Throws FormulaError on a missing binding.
Truth3 eval3(const Formula& f, const Assignment3& assignment, const FrontierValues& frontier = {});

/// Replaces leaves. `replacement` is called with the leaf's kind and name and
/// returns the formula standing for the positive leaf; negated leaves receive
/// its negation. Leaves for which it returns nullopt are kept.
Formula substitute(
    const Formula& f,
    const std::function<std::optional<Formula>(Formula::Kind, const std::string&)>& replacement);

/// Replaces every variable `v` with a key in `by` by `by.at(v)`.
Formula substitute_vars(const Formula& f, const std::map<NodeId, Formula>& by);

/// Replaces each frontier leaf by the neutral element of its enclosing
/// connective: T inside a conjunction, F inside a disjunction. A frontier
/// leaf at the root is left in place.
Formula neutralize_frontier(const Formula& f);

/// Recursively sorts And/Or operands by their printed form.
Formula canonicalize(const Formula& f);

/// ASCII rendering in the DSL syntax: `!x1 & (x2 | $y_xi)`.
std::string to_string(const Formula& f);

}  // namespace refgraph
