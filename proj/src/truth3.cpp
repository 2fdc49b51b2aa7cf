#include "refgraph/truth3.hpp"

namespace refgraph {

std::string_view to_string(Truth3 v) {
  switch (v) {
    case Truth3::F:
      return "F";
    case Truth3::Xi:
      return "xi";
    case Truth3::T:
      return "T";
  }
  return "?";
}

std::optional<Truth3> parse_truth3(std::string_view text) {
  if (text == "T" || text == "true" || text == "1") return Truth3::T;
  if (text == "F" || text == "false" || text == "0") return Truth3::F;
  if (text == "xi" || text == "Xi" || text == "X" || text == "ξ") return Truth3::Xi;
  return std::nullopt;
}

}  // namespace refgraph
