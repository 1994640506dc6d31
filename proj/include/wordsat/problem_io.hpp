#pragma once

// Line-oriented problem files:
//
//   # comment
//   Variables {XYZ}
//   Terminals {ab}
//   Equation: XabY = aXYb
//   Bound: X 8
//   LinConstraint: 2 X -1 Y <= 3
//
// Variables are uppercase ASCII, terminals anything else printable. Either
// equation side may be empty. LinConstraint also accepts '=' as relation.

#include <cstddef>
#include <string>
#include <string_view>

#include "wordsat/core.hpp"

namespace wordsat {

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

EquationSystem parse_problem(std::string_view text);

/// Inverse of parse_problem: parse_problem(write_problem(s)) == s.
std::string write_problem(const EquationSystem& sys);

}  // namespace wordsat
