#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace refgraph {

/// Three truth values, totally ordered F < Xi < T.
///
/// Xi marks a node for which neither the node nor its negation is
/// consistent. Conjunction is the infimum, disjunction the supremum and
/// negation swaps T and F while fixing Xi.
enum class Truth3 : unsigned char { F = 0, Xi = 1, T = 2 };

inline constexpr std::array<Truth3, 3> kAllTruth3 = {Truth3::F, Truth3::Xi, Truth3::T};

constexpr Truth3 and3(Truth3 a, Truth3 b) { return a < b ? a : b; }
constexpr Truth3 or3(Truth3 a, Truth3 b) { return a < b ? b : a; }
constexpr Truth3 not3(Truth3 a) { return static_cast<Truth3>(2 - static_cast<int>(a)); }

constexpr Truth3 from_bool(bool b) { return b ? Truth3::T : Truth3::F; }
constexpr bool is_classical(Truth3 a) { return a != Truth3::Xi; }

std::string_view to_string(Truth3 v);
std::optional<Truth3> parse_truth3(std::string_view text);

}  // namespace refgraph
