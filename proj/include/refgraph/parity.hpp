#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace refgraph {

/// Incremental linear system over GF(2). Rows are kept in echelon form
/// against earlier pivots, so the most recent row can be retracted by pop().
class ParitySystem {
 public:
  explicit ParitySystem(std::size_t variables);

  std::size_t variables() const { return variables_; }
  /// Rows accepted so far, redundant ones included.
  std::size_t rows() const { return rows_.size(); }

  /// Adds XOR of `vars` (repeats cancel) == rhs. Returns false and leaves the
  /// system unchanged when the row contradicts it.
  bool push(const std::vector<std::size_t>& vars, bool rhs);
  /// Retracts the most recent accepted row.
  void pop();

  /// One solution; variables without a pivot take `free_value`.
  std::vector<bool> solve(bool free_value = false) const;

 private:
  using Bits = std::vector<std::uint64_t>;
  struct Row {
    Bits bits;
    bool rhs = false;
    /// Pivot column; none for a row reduced to 0 = 0.
    std::optional<std::size_t> pivot;
  };

  std::size_t variables_;
  std::size_t words_;
  std::vector<Row> rows_;
  /// pivot_row_[c]: index of the row pivoting on column c, or npos.
  std::vector<std::size_t> pivot_row_;
};

}  // namespace refgraph
