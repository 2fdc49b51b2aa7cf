#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace refgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural problems: unknown nodes, cycles, duplicate arrows, formula/successor mismatch.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Evaluation problems: unbound variables, frontier leaves in classical evaluation.
class FormulaError : public Error {
 public:
  using Error::Error;
};

/// A configured size bound (sink count, choice-function product, ...) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A construction step whose precondition does not hold on the current graph.
class StepError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace refgraph
