#ifndef CHERNFORMS_MDSL_HPP
#define CHERNFORMS_MDSL_HPP

// Expression language for metric entries.
//
//   expr    = term (('+' | '-') term)*
//   term    = power (('*' | '/') power)*
//   power   = unary ('^' INT)*
//   unary   = '-' unary | primary
//   primary = NUMBER | NUMBER 'i' | 'z'DIGIT | FUNC '(' expr ')' | '(' expr ')'
//   FUNC    = exp | log | conj
//
// Unary minus binds tighter than '^', so -z1^2 is (-z1)^2.  Literals fold:
// -<lit> becomes a literal, and <real lit> +/- <imaginary lit> becomes one
// complex literal, so "3+2i" is a single node.

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chernforms/errors.hpp"
#include "chernforms/jet.hpp"

namespace chernforms::mdsl {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        message_(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

enum class Kind { literal, variable, conj, neg, add, sub, mul, div, pow, exp, log };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind = Kind::literal;
  Complex value{};  // literal
  int index = 0;    // variable (1-based) or pow exponent
  std::vector<ExprPtr> args;
};

inline bool same(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.index != b.index || a.args.size() != b.args.size()) return false;
  if (a.kind == Kind::literal && a.value != b.value) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same(*a.args[i], *b.args[i])) return false;
  return true;
}

inline ExprPtr literal(Complex v) { return std::make_shared<Expr>(Expr{Kind::literal, v, 0, {}}); }
inline ExprPtr variable(int i) { return std::make_shared<Expr>(Expr{Kind::variable, {}, i, {}}); }
inline ExprPtr unary(Kind k, ExprPtr a) { return std::make_shared<Expr>(Expr{k, {}, 0, {std::move(a)}}); }
inline ExprPtr binary(Kind k, ExprPtr a, ExprPtr b) {
  return std::make_shared<Expr>(Expr{k, {}, 0, {std::move(a), std::move(b)}});
}
inline ExprPtr power(ExprPtr a, int e) { return std::make_shared<Expr>(Expr{Kind::pow, {}, e, {std::move(a)}}); }

namespace detail {

enum class Tok { number, imaginary, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  bool integral = false;
  int line = 1;
  int column = 1;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    default: return "'" + t.text + "'";
  }
}

inline std::vector<Token> lex(std::string_view src, int line, int column) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
      ++column;
      continue;
    }
    Token t{Tok::end, "", 0.0, false, line, column};
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      bool integral = true;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      if (i < src.size() && src[i] == '.') {
        integral = false;
        ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          integral = false;
          i = j;
          while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      std::string_view digits = src.substr(start, i - start);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.number);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw ParseError("malformed number '" + std::string(digits) + "'", line, column);
      }
      t.kind = Tok::number;
      t.integral = integral;
      if (i < src.size() && src[i] == 'i') {
        if (i + 1 < src.size() && is_ident(src[i + 1])) {
          throw ParseError("malformed imaginary literal", line, column);
        }
        ++i;
        t.kind = Tok::imaginary;
      }
      if (i < src.size() && is_ident(src[i])) {
        throw ParseError("unexpected character '" + std::string(1, src[i]) + "' after number", line,
                         column + static_cast<int>(i - start));
      }
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < src.size() && is_ident(src[i])) ++i;
      t.kind = Tok::ident;
    } else {
      ++i;
      switch (ch) {
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '*': t.kind = Tok::star; break;
        case '/': t.kind = Tok::slash; break;
        case '^': t.kind = Tok::caret; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case ',': t.kind = Tok::comma; break;
        default: throw ParseError("unexpected character '" + std::string(1, ch) + "'", line, column);
      }
    }
    t.text = std::string(src.substr(start, i - start));
    column += static_cast<int>(i - start);
    out.push_back(std::move(t));
  }
  out.push_back({Tok::end, "", 0.0, false, line, column});
  return out;
}

inline bool is_real_literal(const Expr& e) { return e.kind == Kind::literal && e.value.imag() == 0.0; }
inline bool is_imag_literal(const Expr& e) {
  return e.kind == Kind::literal && e.value.real() == 0.0 && e.value.imag() != 0.0;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, int max_var) : toks_(std::move(toks)), max_var_(max_var) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::end) fail("unexpected token " + describe(peek()));
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + ", found " + describe(peek()));
    ++pos_;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool plus = take().kind == Tok::plus;
      ExprPtr rhs = term();
      if (is_real_literal(*lhs) && is_imag_literal(*rhs)) {
        lhs = literal({lhs->value.real(), plus ? rhs->value.imag() : -rhs->value.imag()});
      } else {
        lhs = binary(plus ? Kind::add : Kind::sub, lhs, rhs);
      }
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = pow_expr();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      Kind k = take().kind == Tok::star ? Kind::mul : Kind::div;
      lhs = binary(k, lhs, pow_expr());
    }
    return lhs;
  }

  ExprPtr pow_expr() {
    ExprPtr base = unary_expr();
    while (peek().kind == Tok::caret) {
      ++pos_;
      const Token& t = peek();
      if (t.kind != Tok::number || !t.integral) fail("exponent must be a nonnegative integer literal");
      if (t.number > 64) fail("exponent too large");
      base = power(base, static_cast<int>(t.number));
      ++pos_;
    }
    return base;
  }

  ExprPtr unary_expr() {
    if (peek().kind == Tok::minus) {
      ++pos_;
      ExprPtr a = unary_expr();
      if (a->kind == Kind::literal) return literal(-a->value);
      return unary(Kind::neg, a);
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: ++pos_; return literal({t.number, 0.0});
      case Tok::imaginary: ++pos_; return literal({0.0, t.number});
      case Tok::lparen: {
        ++pos_;
        ExprPtr e = expr();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident: return identifier();
      default: fail("unexpected token " + describe(t));
    }
  }

  ExprPtr identifier() {
    Token t = take();
    const std::string& s = t.text;
    if (s.size() == 2 && s[0] == 'z' && s[1] >= '1' && s[1] <= '9') {
      int i = s[1] - '0';
      if (max_var_ > 0 && i > max_var_) {
        throw ParseError("variable " + s + " exceeds dimension " + std::to_string(max_var_), t.line, t.column);
      }
      return variable(i);
    }
    Kind k;
    if (s == "exp") k = Kind::exp;
    else if (s == "log") k = Kind::log;
    else if (s == "conj") k = Kind::conj;
    else throw ParseError("unknown identifier '" + s + "'", t.line, t.column);
    if (peek().kind != Tok::lparen) fail("expected '(' after " + s);
    ++pos_;
    if (peek().kind == Tok::rparen) fail(s + " takes exactly one argument");
    ExprPtr arg = expr();
    if (peek().kind == Tok::comma) fail(s + " takes exactly one argument");
    expect(Tok::rparen, "')'");
    return unary(k, arg);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int max_var_;
};

}  // namespace detail

// Parses `source`.  Positions in errors are 1-based and start at
// (line, column), which lets callers embed expressions in larger files.
// max_var > 0 rejects variables beyond z_{max_var}.
inline ExprPtr parse(std::string_view source, int max_var = 0, int line = 1, int column = 1) {
  return detail::Parser(detail::lex(source, line, column), max_var).parse_all();
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Binding levels: sum 1, product 2, power 3, unary 4, atom 5.
inline int level(const Expr& e) {
  switch (e.kind) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::pow: return 3;
    case Kind::neg: return 4;
    case Kind::literal: {
      if (e.value.real() != 0.0 && e.value.imag() != 0.0) return 5;  // printed in parentheses
      double v = e.value.imag() != 0.0 ? e.value.imag() : e.value.real();
      return std::signbit(v) ? 4 : 5;
    }
    default: return 5;
  }
}

inline void print(const Expr& e, std::string& out);

inline void print_at(const Expr& e, int min_level, std::string& out) {
  if (level(e) < min_level) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

inline void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Kind::literal: {
      double re = e.value.real(), im = e.value.imag();
      if (im == 0.0) {
        out += format_double(re);
      } else if (re == 0.0) {
        out += format_double(im) + "i";
      } else {
        out += "(" + format_double(re) + (std::signbit(im) ? "-" : "+") + format_double(std::abs(im)) + "i)";
      }
      return;
    }
    case Kind::variable: out += "z" + std::to_string(e.index); return;
    case Kind::conj:
    case Kind::exp:
    case Kind::log:
      out += e.kind == Kind::conj ? "conj(" : e.kind == Kind::exp ? "exp(" : "log(";
      print(*e.args[0], out);
      out += ')';
      return;
    case Kind::neg:
      out += '-';
      print_at(*e.args[0], 4, out);
      return;
    case Kind::pow:
      print_at(*e.args[0], 3, out);
      out += "^" + std::to_string(e.index);
      return;
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div: {
      int lv = level(e);
      print_at(*e.args[0], lv, out);
      out += e.kind == Kind::add ? " + " : e.kind == Kind::sub ? " - " : e.kind == Kind::mul ? "*" : "/";
      print_at(*e.args[1], lv + 1, out);
      return;
    }
  }
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print(e, out);
  return out;
}

// Jet of the expression at `base` (length n), truncated at `order`.
inline Jet eval_expr(const Expr& e, std::span<const Complex> base, int order) {
  int n = static_cast<int>(base.size());
  switch (e.kind) {
    case Kind::literal: return Jet::constant(n, order, e.value);
    case Kind::variable:
      if (e.index < 1 || e.index > n) {
        throw IndexOutOfRange("variable z" + std::to_string(e.index) + " outside dimension " + std::to_string(n));
      }
      if (order == 0) return Jet::constant(n, 0, base[e.index - 1]);
      return Jet::variable(e.index, Coord::holomorphic, base[e.index - 1], n, order);
    case Kind::conj: return conj(eval_expr(*e.args[0], base, order));
    case Kind::neg: return -eval_expr(*e.args[0], base, order);
    case Kind::add: return eval_expr(*e.args[0], base, order) + eval_expr(*e.args[1], base, order);
    case Kind::sub: return eval_expr(*e.args[0], base, order) - eval_expr(*e.args[1], base, order);
    case Kind::mul: return eval_expr(*e.args[0], base, order) * eval_expr(*e.args[1], base, order);
    case Kind::div: {
      Jet den = eval_expr(*e.args[1], base, order);
      if (std::abs(den.constant_term()) == 0.0) throw SingularJet("division by an expression vanishing at the base point");
      return eval_expr(*e.args[0], base, order) * inverse(den);
    }
    case Kind::pow: return pow(eval_expr(*e.args[0], base, order), static_cast<unsigned>(e.index));
    case Kind::exp: return exp(eval_expr(*e.args[0], base, order));
    case Kind::log: return log(eval_expr(*e.args[0], base, order));
  }
  throw Error("unknown expression node");
}

inline Jet eval_expr(const Expr& e, const std::vector<Complex>& base, int order) {
  return eval_expr(e, std::span<const Complex>(base), order);
}

}  // namespace chernforms::mdsl

#endif  // CHERNFORMS_MDSL_HPP
