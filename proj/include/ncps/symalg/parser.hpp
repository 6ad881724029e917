#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ncps/symalg/substitution.hpp"

namespace ncps::symalg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbolError : public ParseError {
 public:
  UnknownSymbolError(std::string symbol, std::size_t position)
      : ParseError("unknown symbol '" + symbol + "'", position), symbol_(std::move(symbol)) {}
  [[nodiscard]] const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

namespace detail {

// expr    := ['+'|'-'] term (('+'|'-') term)*
// term    := unary (('*'|'/') unary)*       divisor must be a scalar monomial
// unary   := ('+'|'-') unary | power
// power   := primary ['^' ['-'] INT]         negative powers only for scalars
// primary := INT | IDENT | '(' expr ')' | '[' expr ',' expr ']'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse() {
    Expression e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  Expression expr() {
    Expression e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  Expression term() {
    Expression e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (peek() == '/') {
        const std::size_t at = pos_;
        ++pos_;
        e *= reciprocal(unary(), at);
      } else {
        return e;
      }
    }
  }

  Expression unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expression power() {
    const std::size_t at = position();
    Expression base = primary();
    if (!accept('^')) return base;
    const bool negative = accept('-');
    const std::int64_t n = integer();
    if (!negative) return base.pow(static_cast<unsigned>(n));
    return reciprocal(base, at).pow(static_cast<unsigned>(n));
  }

  Expression primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Expression(integer());
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      Expression a = expr();
      expect(',');
      Expression b = expr();
      expect(']');
      return a * b - b * a;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expression identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);
    using G = Generator;
    if (id == "q1") return G::q1;
    if (id == "q2") return G::q2;
    if (id == "pi1") return G::pi1;
    if (id == "pi2") return G::pi2;
    if (id == "x") return G::x;
    if (id == "y") return G::y;
    if (id == "px") return G::px;
    if (id == "py") return G::py;
    if (id == "X") return rep6(Capital::X);
    if (id == "Y") return rep6(Capital::Y);
    if (id == "Px") return rep6(Capital::Px);
    if (id == "Py") return rep6(Capital::Py);
    if (id == "i") return imag_unit();
    if (id == "hbar") return param(Param::hbar);
    if (id == "m") return param(Param::m);
    if (id == "omega") return param(Param::omega);
    if (id == "theta") return param(Param::theta);
    if (id == "eta") return param(Param::eta);
    if (id == "tau") return param(Param::tau);
    throw UnknownSymbolError(std::string(id), start);
  }

  Expression reciprocal(const Expression& e, std::size_t at) {
    if (e.size() != 1 || !e.terms().begin()->first.word.empty())
      throw ParseError("can only divide by a nonzero scalar monomial", at);
    const auto& [key, c] = *e.terms().begin();
    try {
      return Expression(Scalar{GaussianRational(1) / c, key.powers.pow(-1)});
    } catch (const std::domain_error& err) {
      throw ParseError(err.what(), at);
    }
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    std::int64_t v{};
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{}) throw ParseError("integer out of range", start);
    return v;
  }

  std::size_t position() {
    skip_ws();
    return pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse an operator expression. The result is collected but not reordered;
/// capitals X, Y, Px, Py expand to their deformed representation and
/// commutator brackets [a,b] expand to ab - ba.
inline Expression parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace ncps::symalg
