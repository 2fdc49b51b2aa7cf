#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace refgraph {

using NodeId = std::string;

/// Polarity of an arrow (and of the literal it stands for).
enum class Sign : unsigned char { Positive, Negative };

/// Value of a concatenation: positive iff both parts agree.
constexpr Sign compose_value(Sign a, Sign b) {
  return a == b ? Sign::Positive : Sign::Negative;
}

constexpr Sign flip(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

inline std::string_view to_string(Sign s) { return s == Sign::Positive ? "+" : "-"; }

inline std::optional<Sign> parse_sign(std::string_view text) {
  if (text == "+" || text == "pos" || text == "positive") return Sign::Positive;
  if (text == "-" || text == "neg" || text == "negative") return Sign::Negative;
  return std::nullopt;
}

}  // namespace refgraph
