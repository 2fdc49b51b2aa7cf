#include <iostream>
#include <string>
#include <vector>

#include "refgraph/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return refgraph::run_command(args, std::cout, std::cerr);
}
