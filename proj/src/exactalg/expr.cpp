#include "nabla/exactalg/expr.hpp"

#include <cctype>

#include "nabla/error.hpp"

namespace nabla {

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.number != b.number || a.name != b.name) return false;
  auto same = [](const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t& pos, std::size_t line, std::size_t column_base)
      : text_(text), pos_(pos), line_(line), column_base_(column_base) {}

  ExprPtr parse() {
    auto e = additive();
    skip_space();
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(line_, column_base_ + pos_ + 1, expected);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }

  ExprPtr additive() {
    auto lhs = multiplicative();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Expr::Kind::Add, lhs, multiplicative());
      } else if (accept('-')) {
        lhs = binary(Expr::Kind::Sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr multiplicative() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Expr::Kind::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = binary(Expr::Kind::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Neg;
      e->lhs = unary();
      return e;
    }
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    auto base = atom();
    if (accept('^')) {
      skip_space();
      auto digits = read_digits();
      if (digits.empty()) fail("non-negative integer exponent");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->lhs = base;
      e->number = Integer(digits);
      return e;
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ExprPtr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("number, variable or '('");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = additive();
      if (!accept(')')) fail("')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = Integer(read_digits());
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Variable;
      e->name = std::string(text_.substr(start, pos_ - start));
      return e;
    }
    fail("number, variable or '('");
  }

  std::string_view text_;
  std::size_t& pos_;
  std::size_t line_;
  std::size_t column_base_;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

}  // namespace

ExprPtr parse_expr(std::string_view text, std::size_t& pos, std::size_t line,
                   std::size_t column_base) {
  return ExprParser(text, pos, line, column_base).parse();
}

ExprPtr parse_expr(std::string_view text) {
  std::size_t pos = 0;
  auto e = parse_expr(text, pos);
  if (pos != text.size()) throw SyntaxError(0, pos + 1, "end of expression");
  return e;
}

std::string render_expr(const Expr& e) {
  auto wrap = [](const Expr& child, bool parens) {
    std::string s = render_expr(child);
    return parens ? "(" + s + ")" : s;
  };
  const int p = precedence(e);
  switch (e.kind) {
    case Expr::Kind::Number: return e.number.get_str();
    case Expr::Kind::Variable: return e.name;
    case Expr::Kind::Neg: return "-" + wrap(*e.lhs, precedence(*e.lhs) < 3);
    case Expr::Kind::Pow: return wrap(*e.lhs, precedence(*e.lhs) < 5) + "^" + e.number.get_str();
    default: {
      const char* op = e.kind == Expr::Kind::Add   ? " + "
                       : e.kind == Expr::Kind::Sub ? " - "
                       : e.kind == Expr::Kind::Mul ? "*"
                                                   : "/";
      return wrap(*e.lhs, precedence(*e.lhs) < p) + op + wrap(*e.rhs, precedence(*e.rhs) <= p);
    }
  }
}

Polynomial evaluate_expr(const Expr& e, const RingPtr& ring) {
  switch (e.kind) {
    case Expr::Kind::Number: return Polynomial::constant(ring, Rational(e.number));
    case Expr::Kind::Variable: {
      auto idx = ring->index_of(e.name);
      if (!idx) throw Error(ErrorCode::UnboundName, "variable '" + e.name + "' not in ring");
      return Polynomial::variable(ring, *idx);
    }
    case Expr::Kind::Add: return evaluate_expr(*e.lhs, ring) + evaluate_expr(*e.rhs, ring);
    case Expr::Kind::Sub: return evaluate_expr(*e.lhs, ring) - evaluate_expr(*e.rhs, ring);
    case Expr::Kind::Mul: return evaluate_expr(*e.lhs, ring) * evaluate_expr(*e.rhs, ring);
    case Expr::Kind::Neg: return -evaluate_expr(*e.lhs, ring);
    case Expr::Kind::Div: {
      auto den = evaluate_expr(*e.rhs, ring);
      if (!den.is_constant()) throw Error(ErrorCode::InvalidArgument, "division by a non-constant");
      if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
      return evaluate_expr(*e.lhs, ring).scaled(ring->field().inv(den.constant_term()));
    }
    case Expr::Kind::Pow:
      if (!e.number.fits_uint_p() || e.number > 1000) {
        throw Error(ErrorCode::InvalidArgument, "exponent too large");
      }
      return evaluate_expr(*e.lhs, ring).pow(static_cast<unsigned>(e.number.get_ui()));
  }
  return Polynomial::zero(ring);
}

}  // namespace nabla
