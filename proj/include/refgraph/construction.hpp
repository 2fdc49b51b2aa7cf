#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refgraph/dnf.hpp"
#include "refgraph/graph.hpp"
#include "refgraph/paths.hpp"
#include "refgraph/semantics.hpp"

namespace refgraph {

/// x0..xn with negative arrows x_i -> x_j for all i < j; x_i = AND of !x_j. Throws Error for n < 2.
RefGraph yablo_truncation(std::size_t n);

/// "x" + i.
NodeId yablo_node(std::size_t i);

struct BuildStep {
  enum class Kind : unsigned char { SeedTriangle, PrepareC2, FinishC2, CloseC1 };
  Kind kind = Kind::SeedTriangle;
  /// PrepareC2: the knee being extended. FinishC2: the node receiving its formula. CloseC1: source.
  NodeId a;
  /// PrepareC2: the fresh sink. CloseC1: target. Unused otherwise.
  NodeId b;

  static BuildStep seed() { return {}; }
  static BuildStep prepare(NodeId at, NodeId new_sink) { return {Kind::PrepareC2, std::move(at), std::move(new_sink)}; }
  static BuildStep finish(NodeId at) { return {Kind::FinishC2, std::move(at), {}}; }
  static BuildStep close(NodeId from, NodeId to) { return {Kind::CloseC1, std::move(from), std::move(to)}; }

  friend bool operator==(const BuildStep&, const BuildStep&) = default;
};

struct LedgerEntry {
  BuildStep step;
  std::map<NodeId, Dnf> expressions;
};

struct BuildState {
  RefGraph graph;
  std::vector<LedgerEntry> ledger;
  /// Knee and fresh sink of a PrepareC2 still waiting for its FinishC2.
  std::optional<std::pair<NodeId, NodeId>> pending;
};

/// Applies one step and appends its ledger entry. Throws StepError naming the
/// violated precondition; `state` is unchanged in that case.
void apply_step(BuildState& state, const BuildStep& step);

/// Replays `steps` from the empty graph.
BuildState inductive_build(const std::vector<BuildStep>& steps);

/// Seed, then per level d = 1..depth: PrepareC2(x_d, x_{d+2}), FinishC2(x_{d+1}),
/// CloseC1(x_k, x_{d+2}) for k = d-1 down to 0. Replays to yablo_truncation(depth + 2).
std::vector<BuildStep> canonical_script(std::size_t depth);

std::string to_string(const BuildStep& s);
/// Inverse of to_string: "seed", "prepare x1 x3", "finish x2", "close x0 x3".
BuildStep parse_step(const std::string& text);

struct PairRichness {
  NodeId from;
  NodeId to;
  std::size_t positive_paths = 0;
  std::size_t negative_paths = 0;

  bool unique_path() const { return positive_paths + negative_paths == 1; }
  bool lacks_negative() const { return negative_paths == 0; }
  bool both_polarities() const { return positive_paths > 0 && negative_paths > 0; }
};

/// One entry per ordered pair joined by at least one path, ordered by (from, to).
std::vector<PairRichness> richness_check(const RefGraph& g, std::size_t max_len = kDefaultMaxPathLength);

struct Obligation {
  NodeId target;
  Polarity polarity;
  std::string reason;
};

struct HeadObligations {
  /// One group per disjunct: its variables, all of which must be made contradictory.
  std::vector<std::vector<NodeId>> c1_targets;
  /// Minimal groups whose joint contradiction falsifies every conjunct of the negation.
  std::vector<std::vector<NodeId>> c2_targets;
  std::vector<Obligation> obligations;
};

/// Obligations a DNF head imposes: x+ needs every disjunct contradictory, x- one covering group.
HeadObligations dnf_head_obligations(const Dnf& head);

enum class CellSafety : unsigned char { Safe, EscapeHazard };

struct AuditedPath {
  Path path;
  /// First node after the origin whose required value under origin = F
  /// contradicts its model expression (required T but empty, or required F but universal).
  std::optional<NodeId> blocked_at;
};

struct AuditedCell {
  AuditedPath sigma;
  AuditedPath sigma_prime;
  CellSafety label;
};

struct EndpointAudit {
  NodeId endpoint;
  std::vector<AuditedCell> cells;
  /// EscapeHazard iff some cell at this endpoint is one.
  CellSafety label;
};

struct CompositionReport {
  NodeId origin;
  std::vector<EndpointAudit> endpoints;
};

/// For every node reachable from `origin` with a contradictory cell: can the
/// origin, taken false, still reach it through two contradicting unblocked paths?
CompositionReport composition_audit(const RefGraph& g, const NodeId& origin,
                                    std::size_t max_len = kDefaultMaxPathLength);

std::string_view to_string(CellSafety s);

}  // namespace refgraph
