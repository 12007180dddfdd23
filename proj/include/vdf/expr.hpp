#pragma once

#include "vdf/error.hpp"
#include "vdf/rational.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace vdf {

/// Untyped expression tree shared by every text grammar (residues, series,
/// sigma-polynomials, transseries, difference operators). Interpretation is
/// left to the consumer.
struct Expr {
  enum class Kind { Number, Symbol, Call, Add, Sub, Mul, Div, Neg, Pow, Tuple };

  Kind kind = Kind::Number;
  Rational number;             // Number
  std::string name;            // Symbol, Call
  std::vector<Expr> args;      // operands, call arguments or tuple entries
  std::size_t line = 1;
  std::size_t column = 1;

  const Expr& lhs() const { return args.at(0); }
  const Expr& rhs() const { return args.at(1); }

  [[noreturn]] void fail(const std::string& message) const;
};

/// Grammar:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := atom ('^' ('-' atom | atom))?
///   atom    := number | name | name '(' sum (',' sum)* ')' | '(' sum (',' sum)* ')'
/// Juxtaposition such as "2D" is read as a product when a number is directly
/// followed by a name. Throws ParseError with line and column.
Expr parse_expr(std::string_view text);

}  // namespace vdf
