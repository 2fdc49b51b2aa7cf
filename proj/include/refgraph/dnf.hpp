#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "refgraph/formula.hpp"

namespace refgraph {

/// Largest number of conjuncts a distribution or choice-function expansion may produce.
inline constexpr std::size_t kDnfProductLimit = 1'000'000;

/// A signed atom inside a DNF: either a node variable or a frontier leaf.
/// Ordering is by atom, then kind, then sign (positive first).
struct Literal {
  std::string atom;
  bool frontier = false;
  Sign sign = Sign::Positive;

  static Literal var(std::string a, Sign s = Sign::Positive) { return {std::move(a), false, s}; }
  static Literal xi(std::string tag, Sign s = Sign::Positive) { return {std::move(tag), true, s}; }

  Literal complement() const { return {atom, frontier, flip(sign)}; }
  bool positive() const { return sign == Sign::Positive; }

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Sorted, duplicate-free list of literals. The empty conjunct is `true`.
using Conjunct = std::vector<Literal>;

/// Disjunctive normal form, always kept canonical: each conjunct sorted and
/// duplicate-free, conjuncts sorted and duplicate-free. No disjuncts means
/// `false` (the empty model set); a single empty conjunct means `true`.
class Dnf {
 public:
  Dnf() = default;
  explicit Dnf(std::vector<Conjunct> disjuncts);

  static Dnf falsum() { return Dnf(); }
  static Dnf verum() { return Dnf(std::vector<Conjunct>{Conjunct{}}); }
  static Dnf of(const Literal& l) { return Dnf(std::vector<Conjunct>{Conjunct{l}}); }

  const std::vector<Conjunct>& disjuncts() const { return disjuncts_; }
  std::size_t size() const { return disjuncts_.size(); }
  /// No disjuncts: syntactically false.
  bool is_falsum() const { return disjuncts_.empty(); }
  /// Contains the empty conjunct: syntactically true.
  bool has_empty_conjunct() const;
  std::set<std::string> atoms() const;
  bool has_frontier() const;

  friend bool operator==(const Dnf&, const Dnf&) = default;

 private:
  std::vector<Conjunct> disjuncts_;
};

Conjunct make_conjunct(std::vector<Literal> literals);
/// True when the conjunct holds a complementary pair.
bool is_contradictory(const Conjunct& c);

/// Converts to DNF by distribution; frontier leaves become opaque atoms.
/// Complementary conjuncts are kept. Throws LimitError past `limit` conjuncts.
Dnf to_dnf(const Formula& f, std::size_t limit = kDnfProductLimit);

/// Negation through choice functions: one conjunct per function picking a
/// literal from every disjunct, each picked literal complemented.
Dnf negate_dnf(const Dnf& d, std::size_t limit = kDnfProductLimit);

/// Drops conjuncts with a complementary pair and conjuncts subsumed by a smaller one.
Dnf simplify_dnf(const Dnf& d);

/// Blake canonical form: the disjunction of all prime implicants. Two DNFs
/// are classically equivalent iff their Blake forms are equal.
Dnf blake_canonical_form(const Dnf& d);

Dnf conjoin(const Dnf& a, const Dnf& b, std::size_t limit = kDnfProductLimit);
Dnf disjoin(const Dnf& a, const Dnf& b);

bool equivalent(const Dnf& a, const Dnf& b);
bool is_tautology(const Dnf& d);
bool is_unsatisfiable(const Dnf& d);

/// Classical evaluation; frontier literals raise FormulaError.
bool eval2(const Dnf& d, const Assignment2& assignment);
Formula to_formula(const Dnf& d);
std::string to_string(const Literal& l);
std::string to_string(const Dnf& d);

}  // namespace refgraph
