#include "refgraph/parity.hpp"

#include <bit>
#include <stdexcept>

namespace refgraph {

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

ParitySystem::ParitySystem(std::size_t variables)
    : variables_(variables), words_((variables + 63) / 64), pivot_row_(variables, kNone) {}

bool ParitySystem::push(const std::vector<std::size_t>& vars, bool rhs) {
  Row row{Bits(words_, 0), rhs, std::nullopt};
  for (std::size_t v : vars) {
    if (v >= variables_) throw std::out_of_range("parity variable out of range");
    row.bits[v / 64] ^= std::uint64_t{1} << (v % 64);
  }
  // A pivot is the lowest bit of its row, so eliminating in column order
  // never reintroduces a column already passed.
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t pending = row.bits[w];
    while (pending) {
      const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(pending));
      pending &= pending - 1;
      const std::size_t r = pivot_row_[c];
      if (r == kNone) continue;
      const Row& p = rows_[r];
      for (std::size_t k = w; k < words_; ++k) row.bits[k] ^= p.bits[k];
      row.rhs ^= p.rhs;
      pending = row.bits[w] & ~((std::uint64_t{2} << (c % 64)) - 1);
    }
  }
  for (std::size_t w = 0; w < words_ && !row.pivot; ++w)
    if (row.bits[w]) row.pivot = w * 64 + static_cast<std::size_t>(std::countr_zero(row.bits[w]));
  if (!row.pivot && row.rhs) return false;
  if (row.pivot) pivot_row_[*row.pivot] = rows_.size();
  rows_.push_back(std::move(row));
  return true;
}

void ParitySystem::pop() {
  if (rows_.empty()) throw std::logic_error("pop on an empty parity system");
  if (rows_.back().pivot) pivot_row_[*rows_.back().pivot] = kNone;
  rows_.pop_back();
}

std::vector<bool> ParitySystem::solve(bool free_value) const {
  std::vector<bool> x(variables_, free_value);
  for (std::size_t c = 0; c < variables_; ++c)
    if (pivot_row_[c] != kNone) x[c] = false;
  for (std::size_t r = rows_.size(); r-- > 0;) {
    const Row& row = rows_[r];
    if (!row.pivot) continue;
    bool v = row.rhs;
    for (std::size_t c = 0; c < variables_; ++c) {
      if (c != *row.pivot && ((row.bits[c / 64] >> (c % 64)) & 1)) v ^= x[c];
    }
    x[*row.pivot] = v;
  }
  return x;
}

}  // namespace refgraph
