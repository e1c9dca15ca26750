// SPDX-License-Identifier: MIT
//
// A tiny closed expression language for measure densities, so configs
// stay declarative and re-evaluate exactly at any working precision.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?            (right-associative)
//   unary  := '-' unary | primary
//   primary:= number | 't' | 'i' | 'pi' | name '(' expr ')' | '(' expr ')'
//   name   := exp | log | sin | cos | sqrt | abs
//
// Numeric literals are kept as source text and parsed by MPFR at
// evaluation time: an expression evaluated inside a 512-bit scope yields
// full 512-bit literals.

#pragma once

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "mera/complex.hpp"

namespace mera {

class Expr {
 public:
  Expr() = default;

  static Expr parse(std::string src) {
    Expr e;
    e.src_ = std::move(src);
    Parser p{e.src_, 0};
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != e.src_.size())
      throw std::invalid_argument("expression: trailing input at position " +
                                  std::to_string(p.pos) + " in \"" + e.src_ + "\"");
    return e;
  }

  bool valid() const { return root_ != nullptr; }
  const std::string& source() const { return src_; }

  Complex operator()(const Complex& t) const {
    if (!root_) throw std::logic_error("expression: evaluating empty expression");
    return eval(*root_, t);
  }
  Complex operator()(const Real& t) const { return (*this)(Complex(t)); }

 private:
  enum class Kind { num, var, imag, pi_const, add, sub, mul, div, pow, neg, fun };

  struct Node {
    Kind kind;
    std::string text;  // literal source or function name
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  static NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr,
                      std::string text = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->text = std::move(text);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  struct Parser {
    const std::string& s;
    size_t pos;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
      throw std::invalid_argument("expression: " + what + " at position " +
                                  std::to_string(pos) + " in \"" + s + "\"");
    }

    NodePtr parse_expr() {
      NodePtr lhs = parse_term();
      for (;;) {
        if (eat('+'))
          lhs = make(Kind::add, lhs, parse_term());
        else if (eat('-'))
          lhs = make(Kind::sub, lhs, parse_term());
        else
          return lhs;
      }
    }
    NodePtr parse_term() {
      NodePtr lhs = parse_factor();
      for (;;) {
        if (eat('*'))
          lhs = make(Kind::mul, lhs, parse_factor());
        else if (eat('/'))
          lhs = make(Kind::div, lhs, parse_factor());
        else
          return lhs;
      }
    }
    NodePtr parse_factor() {
      NodePtr base = parse_unary();
      if (eat('^')) return make(Kind::pow, base, parse_factor());
      return base;
    }
    NodePtr parse_unary() {
      if (eat('-')) return make(Kind::neg, parse_unary());
      return parse_primary();
    }
    NodePtr parse_primary() {
      skip_ws();
      if (pos >= s.size()) fail("unexpected end of input");
      char c = s[pos];
      if (c == '(') {
        ++pos;
        NodePtr inner = parse_expr();
        if (!eat(')')) fail("missing ')'");
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
      if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
      fail("unexpected character");
    }
    NodePtr parse_number() {
      size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
        ++pos;
      if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        size_t mark = pos;
        ++pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        } else {
          pos = mark;  // not an exponent
        }
      }
      return make(Kind::num, nullptr, nullptr, s.substr(start, pos - start));
    }
    NodePtr parse_name() {
      size_t start = pos;
      while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "t") return make(Kind::var);
      if (name == "i") return make(Kind::imag);
      if (name == "pi") return make(Kind::pi_const);
      if (name == "exp" || name == "log" || name == "sin" || name == "cos" ||
          name == "sqrt" || name == "abs") {
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = parse_expr();
        if (!eat(')')) fail("missing ')'");
        return make(Kind::fun, arg, nullptr, name);
      }
      pos = start;
      fail("unknown name \"" + name + "\"");
    }
  };

  static Complex eval(const Node& n, const Complex& t) {
    switch (n.kind) {
      case Kind::num:
        return Complex(Real(n.text));
      case Kind::var:
        return t;
      case Kind::imag:
        return Complex::i();
      case Kind::pi_const:
        return Complex(pi());
      case Kind::add:
        return eval(*n.a, t) + eval(*n.b, t);
      case Kind::sub:
        return eval(*n.a, t) - eval(*n.b, t);
      case Kind::mul:
        return eval(*n.a, t) * eval(*n.b, t);
      case Kind::div:
        return eval(*n.a, t) / eval(*n.b, t);
      case Kind::neg:
        return -eval(*n.a, t);
      case Kind::pow: {
        Complex base = eval(*n.a, t);
        Complex e = eval(*n.b, t);
        if (e.im.is_zero() && mpfr_integer_p(e.re.mp()) &&
            abs(e.re) <= Real(1000)) {
          return pow(base, e.re.to_long());
        }
        if (e.im.is_zero()) return pow(base, e.re);
        return exp(e * log(base));
      }
      case Kind::fun: {
        Complex a = eval(*n.a, t);
        if (n.text == "exp") return exp(a);
        if (n.text == "log") return log(a);
        if (n.text == "sin") return sin(a);
        if (n.text == "cos") return cos(a);
        if (n.text == "sqrt") return sqrt(a);
        return Complex(abs(a));  // abs
      }
    }
    throw std::logic_error("expression: corrupt node");
  }

  NodePtr root_;
  std::string src_;
};

}  // namespace mera
