#include "refgraph/semantics.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "refgraph/errors.hpp"

namespace refgraph {

std::size_t sink_limit_from_env() {
  if (const char* env = std::getenv("REFGRAPH_SINK_LIMIT")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultSinkLimit;
}

SinkAssignment ModelSet::assignment(std::size_t k) const {
  SinkAssignment out;
  for (std::size_t i = 0; i < sinks.size(); ++i) out[sinks[i]] = (members.at(k) >> i) & 1U;
  return out;
}

namespace {

// Index-based evaluator: every formula becomes a postfix program over node
// slots, evaluated in reverse topological order.
struct Op {
  enum Code : unsigned char { Var, NegVar, Const, And, Or } code;
  std::uint32_t arg;
};

class CompiledGraph {
 public:
  explicit CompiledGraph(const RefGraph& g) {
    g.validate();
    const auto topo = g.topological_order();
    order_.assign(topo.rbegin(), topo.rend());
    for (std::size_t i = 0; i < order_.size(); ++i) index_[order_[i]] = static_cast<std::uint32_t>(i);
    programs_.resize(order_.size());
    sink_slot_.assign(order_.size(), -1);
    sinks_ = g.sinks();
    for (std::size_t k = 0; k < sinks_.size(); ++k) sink_slot_[index_.at(sinks_[k])] = static_cast<int>(k);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const auto& f = g.formula(order_[i]);
      if (f) compile(*f, programs_[i]);
    }
  }

  const std::vector<NodeId>& sinks() const { return sinks_; }
  std::uint32_t index(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw GraphError("unknown node '" + id + "'");
    return it->second;
  }
  const std::vector<NodeId>& order() const { return order_; }

  void run(std::uint64_t mask, std::vector<char>& values, std::vector<char>& stack) const {
    values.resize(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (sink_slot_[i] >= 0) {
        values[i] = static_cast<char>((mask >> sink_slot_[i]) & 1U);
        continue;
      }
      stack.clear();
      for (const Op& op : programs_[i]) {
        switch (op.code) {
          case Op::Var:
            stack.push_back(values[op.arg]);
            break;
          case Op::NegVar:
            stack.push_back(static_cast<char>(!values[op.arg]));
            break;
          case Op::Const:
            stack.push_back(static_cast<char>(op.arg));
            break;
          case Op::And:
          case Op::Or: {
            const bool is_and = op.code == Op::And;
            bool acc = is_and;
            for (std::uint32_t k = 0; k < op.arg; ++k) {
              const bool v = stack.back();
              stack.pop_back();
              acc = is_and ? (acc && v) : (acc || v);
            }
            stack.push_back(static_cast<char>(acc));
            break;
          }
        }
      }
      values[i] = stack.back();
    }
  }

 private:
  void compile(const Formula& f, std::vector<Op>& prog) const {
    switch (f.kind()) {
      case Formula::Kind::Literal:
        prog.push_back({f.positive() ? Op::Var : Op::NegVar, index_.at(f.name())});
        return;
      case Formula::Kind::Frontier:
        throw FormulaError("frontier leaf '" + f.name() + "' has no classical value");
      case Formula::Kind::True:
      case Formula::Kind::False:
        prog.push_back({Op::Const, f.kind() == Formula::Kind::True ? 1U : 0U});
        return;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        for (const auto& op : f.operands()) compile(op, prog);
        prog.push_back({f.kind() == Formula::Kind::And ? Op::And : Op::Or,
                        static_cast<std::uint32_t>(f.operands().size())});
        return;
    }
  }

  std::vector<NodeId> order_;
  std::map<NodeId, std::uint32_t> index_;
  std::vector<std::vector<Op>> programs_;
  std::vector<int> sink_slot_;
  std::vector<NodeId> sinks_;
};

void check_limit(std::size_t sinks, const EnumerationLimits& limits) {
  const std::size_t limit = std::min<std::size_t>(limits.max_sinks, 62);
  if (sinks > limit) {
    throw LimitError("graph has " + std::to_string(sinks) + " sinks; enumeration limit is " +
                     std::to_string(limit) + " (REFGRAPH_SINK_LIMIT)");
  }
}

// Masks where `node` evaluates to `want`, both polarities in one pass.
struct SplitModels {
  std::vector<std::uint64_t> pos;
  std::vector<std::uint64_t> neg;
};

SplitModels enumerate_split(const CompiledGraph& cg, const NodeId& node,
                            const EnumerationLimits& limits) {
  check_limit(cg.sinks().size(), limits);
  const std::uint32_t slot = cg.index(node);
  const std::uint64_t total = std::uint64_t{1} << cg.sinks().size();
  const unsigned jobs = std::max(1U, std::min<unsigned>(limits.jobs, static_cast<unsigned>(total)));
  std::vector<SplitModels> shards(jobs);
  auto work = [&](unsigned shard) {
    const std::uint64_t lo = total * shard / jobs;
    const std::uint64_t hi = total * (shard + 1) / jobs;
    std::vector<char> values, stack;
    for (std::uint64_t m = lo; m < hi; ++m) {
      cg.run(m, values, stack);
      (values[slot] ? shards[shard].pos : shards[shard].neg).push_back(m);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned s = 0; s < jobs; ++s) threads.emplace_back(work, s);
    for (auto& t : threads) t.join();
  }
  SplitModels out;
  for (auto& s : shards) {
    out.pos.insert(out.pos.end(), s.pos.begin(), s.pos.end());
    out.neg.insert(out.neg.end(), s.neg.begin(), s.neg.end());
  }
  return out;
}

std::uint64_t mask_of(const std::vector<NodeId>& sinks, const SinkAssignment& a) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < sinks.size(); ++i) {
    auto it = a.find(sinks[i]);
    if (it == a.end()) throw FormulaError("no value for sink '" + sinks[i] + "'");
    if (it->second) m |= std::uint64_t{1} << i;
  }
  return m;
}

}  // namespace

std::map<NodeId, bool> propagate(const RefGraph& g, const SinkAssignment& sinks) {
  CompiledGraph cg(g);
  std::vector<char> values, stack;
  cg.run(mask_of(cg.sinks(), sinks), values, stack);
  std::map<NodeId, bool> out;
  for (std::size_t i = 0; i < cg.order().size(); ++i) out[cg.order()[i]] = values[i];
  return out;
}

ModelSet models_of(const RefGraph& g, const NodeId& node, Polarity polarity,
                   const EnumerationLimits& limits) {
  CompiledGraph cg(g);
  auto split = enumerate_split(cg, node, limits);
  return ModelSet{cg.sinks(), polarity == Polarity::Pos ? std::move(split.pos) : std::move(split.neg)};
}

std::map<NodeId, Dnf> model_expressions(const RefGraph& g) {
  g.validate();
  const auto topo = g.topological_order();
  std::map<NodeId, Dnf> expr;
  std::map<NodeId, Dnf> neg_expr;
  auto negated = [&](const NodeId& v) -> const Dnf& {
    auto it = neg_expr.find(v);
    if (it == neg_expr.end()) {
      it = neg_expr.emplace(v, blake_canonical_form(negate_dnf(expr.at(v)))).first;
    }
    return it->second;
  };
  auto expand = [&](auto&& self, const Formula& f) -> Dnf {
    switch (f.kind()) {
      case Formula::Kind::Literal:
        return f.positive() ? expr.at(f.name()) : negated(f.name());
      case Formula::Kind::Frontier:
        return Dnf::of(Literal::xi(f.name(), f.sign()));
      case Formula::Kind::True:
        return Dnf::verum();
      case Formula::Kind::False:
        return Dnf::falsum();
      case Formula::Kind::And: {
        Dnf acc = Dnf::verum();
        for (const auto& op : f.operands()) acc = simplify_dnf(conjoin(acc, self(self, op)));
        return acc;
      }
      case Formula::Kind::Or: {
        Dnf acc;
        for (const auto& op : f.operands()) acc = disjoin(acc, self(self, op));
        return simplify_dnf(acc);
      }
    }
    return {};
  };
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto& f = g.formula(*it);
    if (!f) {
      expr.emplace(*it, Dnf::of(Literal::var(*it)));
    } else {
      expr.emplace(*it, blake_canonical_form(expand(expand, *f)));
    }
  }
  return expr;
}

Dnf node_model_expression(const RefGraph& g, const NodeId& node) {
  if (!g.has_node(node)) throw GraphError("unknown node '" + node + "'");
  return model_expressions(g).at(node);
}

NodeStatus check_status(const RefGraph& g, const NodeId& node, const EnumerationLimits& limits) {
  CompiledGraph cg(g);
  auto split = enumerate_split(cg, node, limits);
  NodeStatus status;
  if (!split.pos.empty()) status.positive_witness = ModelSet{cg.sinks(), {split.pos.front()}}.assignment(0);
  if (!split.neg.empty()) status.negative_witness = ModelSet{cg.sinks(), {split.neg.front()}}.assignment(0);
  if (split.pos.empty()) {
    status.kind = StatusKind::C1Holds;
  } else if (split.neg.empty()) {
    status.kind = StatusKind::C2Holds;
  } else {
    status.kind = StatusKind::Open;
  }
  return status;
}

std::optional<EscapeWitness> escape_search(const RefGraph& g, const NodeId& node,
                                           const EnumerationLimits& limits) {
  const ModelSet neg = models_of(g, node, Polarity::Neg, limits);
  if (neg.empty()) return std::nullopt;
  EscapeWitness w;
  w.assignment = neg.assignment(0);
  const auto full = propagate(g, w.assignment);

  auto holds = [&](const Formula& f) { return eval2(f, Assignment2(full.begin(), full.end())); };
  NodeId cur = node;
  while (true) {
    const bool value = full.at(cur);
    const auto& f = g.formula(cur);
    if (!f) {
      w.trace.push_back({cur, value, std::nullopt});
      break;
    }
    std::optional<Formula> choice;
    if (f->kind() == Formula::Kind::Literal) {
      choice = *f;
    } else if (!value && f->kind() == Formula::Kind::And) {
      for (const auto& op : f->operands()) {
        if (!holds(op)) {
          choice = op;
          break;
        }
      }
    } else if (value && f->kind() == Formula::Kind::Or) {
      for (const auto& op : f->operands()) {
        if (holds(op)) {
          choice = op;
          break;
        }
      }
    }
    w.trace.push_back({cur, value, choice});
    if (!choice || choice->kind() != Formula::Kind::Literal) break;
    cur = choice->name();
  }
  return w;
}

bool partition_check(const RefGraph& g, const NodeId& node, const EnumerationLimits& limits) {
  const ModelSet pos = models_of(g, node, Polarity::Pos, limits);
  const ModelSet neg = models_of(g, node, Polarity::Neg, limits);
  std::vector<std::uint64_t> both;
  std::set_intersection(pos.members.begin(), pos.members.end(), neg.members.begin(),
                        neg.members.end(), std::back_inserter(both));
  std::vector<std::uint64_t> all;
  std::set_union(pos.members.begin(), pos.members.end(), neg.members.begin(), neg.members.end(),
                 std::back_inserter(all));
  return both.empty() && all.size() == pos.universe_size();
}

std::map<NodeId, Truth3> eval3_graph(const RefGraph& g, const std::map<NodeId, Truth3>& sink_values,
                                     const FrontierValues& frontier) {
  g.validate();
  const auto topo = g.topological_order();
  std::map<NodeId, Truth3> values;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto& f = g.formula(*it);
    if (!f) {
      auto sv = sink_values.find(*it);
      if (sv == sink_values.end()) throw FormulaError("missing value for sink '" + *it + "'");
      values[*it] = sv->second;
    } else {
      values[*it] = eval3(*f, values, frontier);
    }
  }
  return values;
}

UnaryClass two_terminal_classify(const RefGraph& g, const NodeId& in_node, const NodeId& out_sink) {
  const auto sinks = g.sinks();
  if (sinks.size() != 1) {
    throw GraphError("two-terminal classification needs exactly one sink, found " +
                     std::to_string(sinks.size()));
  }
  if (sinks.front() != out_sink) throw GraphError("'" + out_sink + "' is not the sink of the graph");
  const bool at_false = propagate(g, {{out_sink, false}}).at(in_node);
  const bool at_true = propagate(g, {{out_sink, true}}).at(in_node);
  if (!at_false && at_true) return UnaryClass::Identity;
  if (at_false && !at_true) return UnaryClass::Negation;
  return at_true ? UnaryClass::ConstTrue : UnaryClass::ConstFalse;
}

std::string_view to_string(StatusKind k) {
  switch (k) {
    case StatusKind::C1Holds:
      return "C1Holds";
    case StatusKind::C2Holds:
      return "C2Holds";
    case StatusKind::Open:
      return "Open";
  }
  return "?";
}

std::string_view to_string(UnaryClass c) {
  switch (c) {
    case UnaryClass::Identity:
      return "Identity";
    case UnaryClass::Negation:
      return "Negation";
    case UnaryClass::ConstFalse:
      return "ConstFalse";
    case UnaryClass::ConstTrue:
      return "ConstTrue";
  }
  return "?";
}

}  // namespace refgraph
