#pragma once

// Polynomial text grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | identifier | '(' expr ')'
// Juxtaposition is rejected; whitespace is insignificant.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "equising/polynomial.hpp"

namespace equising {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// `line` and `column` locate the first character of `text` in its source,
// so errors point into the enclosing file.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, std::size_t line = 1,
                            std::size_t column = 1);

Rational parse_rational(std::string_view text, std::size_t line = 1, std::size_t column = 1);

}  // namespace equising
