#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "il/syntax.hpp"

namespace il {

/// Raised by the parser with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

TermPtr parse_program(std::string_view text);
ExprPtr parse_expr(std::string_view text);

std::string print_program(const Term& t);
std::string print_expr(const Expr& e);

}  // namespace il
