#include "refgraph/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "refgraph/errors.hpp"

namespace refgraph {

Formula::Formula(Kind kind, std::string name, Sign sign, std::vector<Formula> operands)
    : kind_(kind), name_(std::move(name)), sign_(sign), operands_(std::move(operands)) {}

Formula Formula::literal(NodeId id, Sign sign) {
  if (id.empty()) throw std::invalid_argument("literal with empty node id");
  return Formula(Kind::Literal, std::move(id), sign, {});
}

Formula Formula::frontier(std::string tag, Sign sign) {
  if (tag.empty()) throw std::invalid_argument("frontier leaf with empty tag");
  return Formula(Kind::Frontier, std::move(tag), sign, {});
}

Formula Formula::top() { return Formula(Kind::True, {}, Sign::Positive, {}); }
Formula Formula::bottom() { return Formula(Kind::False, {}, Sign::Positive, {}); }

namespace {

Formula make_nary(Formula::Kind kind, std::vector<Formula> operands,
                  Formula (*build)(Formula::Kind, std::vector<Formula>)) {
  if (operands.empty()) throw std::invalid_argument("connective needs at least one operand");
  if (operands.size() == 1) return std::move(operands.front());
  std::vector<Formula> flat;
  flat.reserve(operands.size());
  for (auto& op : operands) {
    if (op.kind() == kind) {
      flat.insert(flat.end(), op.operands().begin(), op.operands().end());
    } else {
      flat.push_back(std::move(op));
    }
  }
  return build(kind, std::move(flat));
}

}  // namespace

Formula Formula::conj(std::vector<Formula> operands) {
  return make_nary(Kind::And, std::move(operands), [](Kind k, std::vector<Formula> ops) {
    return Formula(k, {}, Sign::Positive, std::move(ops));
  });
}

Formula Formula::disj(std::vector<Formula> operands) {
  return make_nary(Kind::Or, std::move(operands), [](Kind k, std::vector<Formula> ops) {
    return Formula(k, {}, Sign::Positive, std::move(ops));
  });
}

bool Formula::is_literal_conjunction() const {
  if (kind_ == Kind::Literal) return true;
  if (kind_ != Kind::And) return false;
  return std::all_of(operands_.begin(), operands_.end(),
                     [](const Formula& op) { return op.kind() == Kind::Literal; });
}

std::set<NodeId> Formula::variables() const {
  std::set<NodeId> out;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind() == Kind::Literal) out.insert(f.name());
    for (const auto& op : f.operands()) walk(op);
  };
  walk(*this);
  return out;
}

std::set<std::string> Formula::frontier_tags() const {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind() == Kind::Frontier) out.insert(f.name());
    for (const auto& op : f.operands()) walk(op);
  };
  walk(*this);
  return out;
}

bool Formula::has_frontier() const {
  if (kind_ == Kind::Frontier) return true;
  return std::any_of(operands_.begin(), operands_.end(),
                     [](const Formula& op) { return op.has_frontier(); });
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Literal:
      return Formula::literal(f.name(), flip(f.sign()));
    case Formula::Kind::Frontier:
      return Formula::frontier(f.name(), flip(f.sign()));
    case Formula::Kind::True:
      return Formula::bottom();
    case Formula::Kind::False:
      return Formula::top();
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> ops;
      ops.reserve(f.operands().size());
      for (const auto& op : f.operands()) ops.push_back(negate(op));
      return f.kind() == Formula::Kind::And ? Formula::disj(std::move(ops))
                                            : Formula::conj(std::move(ops));
    }
  }
  return f;
}

bool eval2(const Formula& f, const Assignment2& assignment) {
  switch (f.kind()) {
    case Formula::Kind::Literal: {
      auto it = assignment.find(f.name());
      if (it == assignment.end()) throw FormulaError("unassigned variable '" + f.name() + "'");
      return f.positive() ? it->second : !it->second;
    }
    case Formula::Kind::Frontier:
      throw FormulaError("frontier leaf '" + f.name() + "' has no classical value");
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::And: {
      // Evaluate every operand so that unbound variables are always reported.
      bool value = true;
      for (const auto& op : f.operands()) value = eval2(op, assignment) && value;
      return value;
    }
    case Formula::Kind::Or: {
      bool value = false;
      for (const auto& op : f.operands()) value = eval2(op, assignment) || value;
      return value;
    }
  }
  return false;
}

Truth3 eval3(const Formula& f, const Assignment3& assignment, const FrontierValues& frontier) {
  switch (f.kind()) {
    case Formula::Kind::Literal: {
      auto it = assignment.find(f.name());
      if (it == assignment.end()) throw FormulaError("unassigned variable '" + f.name() + "'");
      return f.positive() ? it->second : not3(it->second);
    }
    case Formula::Kind::Frontier: {
      auto it = frontier.find(f.name());
      if (it == frontier.end()) throw FormulaError("unbound frontier leaf '" + f.name() + "'");
      return f.positive() ? it->second : not3(it->second);
    }
    case Formula::Kind::True:
      return Truth3::T;
    case Formula::Kind::False:
      return Truth3::F;
    case Formula::Kind::And: {
      Truth3 value = Truth3::T;
      for (const auto& op : f.operands()) value = and3(value, eval3(op, assignment, frontier));
      return value;
    }
    case Formula::Kind::Or: {
      Truth3 value = Truth3::F;
      for (const auto& op : f.operands()) value = or3(value, eval3(op, assignment, frontier));
      return value;
    }
  }
  return Truth3::F;
}

Formula substitute(
    const Formula& f,
    const std::function<std::optional<Formula>(Formula::Kind, const std::string&)>& replacement) {
  if (f.is_leaf()) {
    auto r = replacement(f.kind(), f.name());
    if (!r) return f;
    return f.positive() ? *r : negate(*r);
  }
  if (f.is_constant()) return f;
  std::vector<Formula> ops;
  ops.reserve(f.operands().size());
  for (const auto& op : f.operands()) ops.push_back(substitute(op, replacement));
  return f.kind() == Formula::Kind::And ? Formula::conj(std::move(ops))
                                        : Formula::disj(std::move(ops));
}

Formula substitute_vars(const Formula& f, const std::map<NodeId, Formula>& by) {
  return substitute(f, [&](Formula::Kind kind, const std::string& name) -> std::optional<Formula> {
    if (kind != Formula::Kind::Literal) return std::nullopt;
    auto it = by.find(name);
    if (it == by.end()) return std::nullopt;
    return it->second;
  });
}

Formula neutralize_frontier(const Formula& f) {
  if (f.is_leaf() || f.is_constant()) return f;
  const bool in_and = f.kind() == Formula::Kind::And;
  std::vector<Formula> ops;
  ops.reserve(f.operands().size());
  for (const auto& op : f.operands()) {
    if (op.kind() == Formula::Kind::Frontier) {
      ops.push_back(Formula::constant(in_and));
    } else {
      ops.push_back(neutralize_frontier(op));
    }
  }
  return in_and ? Formula::conj(std::move(ops)) : Formula::disj(std::move(ops));
}

Formula canonicalize(const Formula& f) {
  if (f.is_leaf() || f.is_constant()) return f;
  std::vector<std::pair<std::string, Formula>> keyed;
  for (const auto& op : f.operands()) {
    Formula c = canonicalize(op);
    keyed.emplace_back(to_string(c), std::move(c));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Formula> ops;
  for (auto& [key, op] : keyed) ops.push_back(std::move(op));
  return f.kind() == Formula::Kind::And ? Formula::conj(std::move(ops))
                                        : Formula::disj(std::move(ops));
}

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Literal:
      return (f.positive() ? "" : "!") + f.name();
    case Formula::Kind::Frontier:
      return (f.positive() ? "$" : "!$") + f.name();
    case Formula::Kind::True:
      return "true";
    case Formula::Kind::False:
      return "false";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const bool is_and = f.kind() == Formula::Kind::And;
      std::string out;
      for (const auto& op : f.operands()) {
        if (!out.empty()) out += is_and ? " & " : " | ";
        const bool wrap = is_and && op.kind() == Formula::Kind::Or;
        out += wrap ? "(" + to_string(op) + ")" : to_string(op);
      }
      return out;
    }
  }
  return {};
}

}  // namespace refgraph
