#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "nabla/exactalg/polynomial.hpp"

namespace nabla {

/// Unevaluated polynomial expression. The script language keeps ideals in this
/// form until they are bound to a ring.
struct Expr {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow };

  Kind kind = Kind::Number;
  Integer number;       // Number, and the exponent of Pow
  std::string name;     // Variable
  std::shared_ptr<const Expr> lhs, rhs;

  friend bool operator==(const Expr& a, const Expr& b);
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parses an expression starting at `pos` and stops at the first character that
/// cannot continue it (e.g. ',' or '}'). Column numbers in errors are 1-based
/// offsets into `text` plus `column_base`.
ExprPtr parse_expr(std::string_view text, std::size_t& pos, std::size_t line = 0,
                   std::size_t column_base = 0);

/// Fully-consumed parse.
ExprPtr parse_expr(std::string_view text);

/// Renders with minimal parentheses; re-parsing gives an equal tree.
std::string render_expr(const Expr& e);

/// Throws UnboundName for unknown variables and DivisionByZero / InvalidArgument
/// for non-constant divisors.
Polynomial evaluate_expr(const Expr& e, const RingPtr& ring);

inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  return evaluate_expr(*parse_expr(text), ring);
}

}  // namespace nabla
