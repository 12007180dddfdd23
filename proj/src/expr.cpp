#include "vdf/expr.hpp"

#include <cctype>

namespace vdf {

void Expr::fail(const std::string& message) const { throw ParseError(message, line, column); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_space();
    if (at_end()) error("empty expression");
    Expr e = sum();
    skip_space();
    if (!at_end()) error(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    advance();
    return true;
  }

  [[noreturn]] void error(const std::string& message) const { throw ParseError(message, line_, col_); }

  Expr node(Expr::Kind kind, std::size_t line, std::size_t col) const {
    Expr e;
    e.kind = kind;
    e.line = line;
    e.column = col;
    return e;
  }

  Expr binary(Expr::Kind kind, Expr a, Expr b) const {
    Expr e = node(kind, a.line, a.column);
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr sum() {
    Expr e = product();
    while (true) {
      if (accept('+')) e = binary(Expr::Kind::Add, std::move(e), product());
      else if (accept('-')) e = binary(Expr::Kind::Sub, std::move(e), product());
      else return e;
    }
  }

  Expr product() {
    Expr e = unary();
    while (true) {
      if (accept('*')) e = binary(Expr::Kind::Mul, std::move(e), unary());
      else if (accept('/')) e = binary(Expr::Kind::Div, std::move(e), unary());
      else return e;
    }
  }

  Expr unary() {
    skip_space();
    const auto line = line_;
    const auto col = col_;
    if (accept('-')) {
      Expr e = node(Expr::Kind::Neg, line, col);
      e.args.push_back(unary());
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    skip_space();
    const auto line = line_;
    const auto col = col_;
    Expr exponent;
    if (accept('-')) {
      exponent = node(Expr::Kind::Neg, line, col);
      exponent.args.push_back(atom());
    } else {
      exponent = atom();
    }
    return binary(Expr::Kind::Pow, std::move(base), std::move(exponent));
  }

  Expr atom() {
    skip_space();
    const auto line = line_;
    const auto col = col_;
    if (at_end()) error("unexpected end of expression");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      Expr e = node(Expr::Kind::Number, line, col);
      e.number = Rational(Integer(digits));
      // "2D" or "3x": implicit product.
      if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '('))
        return binary(Expr::Kind::Mul, std::move(e), power());
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        name += peek();
        advance();
      }
      if (peek() == '(') {
        advance();
        Expr e = node(Expr::Kind::Call, line, col);
        e.name = std::move(name);
        e.args = list(')');
        return e;
      }
      Expr e = node(Expr::Kind::Symbol, line, col);
      e.name = std::move(name);
      return e;
    }
    if (c == '(') {
      advance();
      auto items = list(')');
      if (items.size() == 1) return std::move(items.front());
      Expr e = node(Expr::Kind::Tuple, line, col);
      e.args = std::move(items);
      return e;
    }
    error(std::string("unexpected '") + c + "'");
  }

  std::vector<Expr> list(char close) {
    std::vector<Expr> items;
    items.push_back(sum());
    while (accept(',')) items.push_back(sum());
    if (!accept(close)) error(std::string("expected '") + close + "'");
    return items;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace vdf
