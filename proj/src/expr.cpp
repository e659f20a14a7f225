#include "cournot/expr.hpp"

#include <cctype>
#include <limits>

namespace cournot {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t{Tok::end, "", line_, column_};
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += take();
      t.kind = Tok::number;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += take();
      }
      t.kind = Tok::ident;
      return t;
    }
    t.text = std::string(1, take());
    switch (c) {
      case '+': t.kind = Tok::plus; break;
      case '-': t.kind = Tok::minus; break;
      case '*': t.kind = Tok::star; break;
      case '/': t.kind = Tok::slash; break;
      case '^': t.kind = Tok::caret; break;
      case '(': t.kind = Tok::lparen; break;
      case ')': t.kind = Tok::rparen; break;
      default:
        throw SyntaxError("unexpected character " + describe(t), t.line, t.column);
    }
    return t;
  }

 private:
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  ExprAst parse_all() {
    ExprAst e = expr();
    if (cur_.kind != Tok::end) fail("expected an operator before " + describe(cur_));
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, cur_.line, cur_.column); }

  void advance() { cur_ = lex_.next(); }

  static ExprAst binary(ExprAst::Kind k, ExprAst a, ExprAst b) {
    ExprAst e;
    e.kind = k;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  ExprAst expr() {
    ExprAst lhs = term();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      auto k = cur_.kind == Tok::plus ? ExprAst::Kind::add : ExprAst::Kind::sub;
      advance();
      lhs = binary(k, std::move(lhs), term());
    }
    return lhs;
  }

  ExprAst term() {
    ExprAst lhs = unary();
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      auto k = cur_.kind == Tok::star ? ExprAst::Kind::mul : ExprAst::Kind::div;
      advance();
      lhs = binary(k, std::move(lhs), unary());
    }
    return lhs;
  }

  ExprAst unary() {
    if (cur_.kind == Tok::minus) {
      advance();
      ExprAst e;
      e.kind = ExprAst::Kind::neg;
      e.args.push_back(unary());
      return e;
    }
    return power();
  }

  ExprAst power() {
    ExprAst base = primary();
    if (cur_.kind != Tok::caret) return base;
    advance();
    if (cur_.kind != Tok::number) fail("exponent must be a nonnegative integer, got " + describe(cur_));
    if (cur_.text.size() > 5 || std::stoul(cur_.text) > std::numeric_limits<std::uint16_t>::max()) {
      fail("exponent too large");
    }
    ExprAst e;
    e.kind = ExprAst::Kind::pow;
    e.exponent = static_cast<unsigned>(std::stoul(cur_.text));
    e.args.push_back(std::move(base));
    advance();
    if (cur_.kind == Tok::caret) fail("chained exponents need parentheses");
    return e;
  }

  ExprAst primary() {
    ExprAst e;
    switch (cur_.kind) {
      case Tok::number:
        e.kind = ExprAst::Kind::literal;
        e.value = Rat(Int(cur_.text, 10));
        advance();
        return e;
      case Tok::ident: {
        auto v = var_from_name(cur_.text);
        if (!v) throw UnknownIdentifier("unknown identifier '" + cur_.text + "'", cur_.line, cur_.column);
        e.kind = ExprAst::Kind::variable;
        e.var = *v;
        advance();
        return e;
      }
      case Tok::lparen: {
        advance();
        e = expr();
        if (cur_.kind != Tok::rparen) fail("expected ')' but found " + describe(cur_));
        advance();
        return e;
      }
      default:
        fail("expected a number, variable or '(' but found " + describe(cur_));
    }
  }

  Lexer lex_;
  Token cur_{Tok::end, "", 1, 1};
};

template <class T, class Div>
T fold(const ExprAst& ast, const Div& divide) {
  switch (ast.kind) {
    case ExprAst::Kind::literal:
      return T(MPoly(ast.value));
    case ExprAst::Kind::variable:
      return T(MPoly::variable(ast.var));
    case ExprAst::Kind::add:
      return fold<T>(ast.args[0], divide) + fold<T>(ast.args[1], divide);
    case ExprAst::Kind::sub:
      return fold<T>(ast.args[0], divide) - fold<T>(ast.args[1], divide);
    case ExprAst::Kind::neg:
      return -fold<T>(ast.args[0], divide);
    case ExprAst::Kind::mul:
      return fold<T>(ast.args[0], divide) * fold<T>(ast.args[1], divide);
    case ExprAst::Kind::pow: {
      T base = fold<T>(ast.args[0], divide);
      T out = T(MPoly(1L));
      for (unsigned i = 0; i < ast.exponent; ++i) out = out * base;
      return out;
    }
    case ExprAst::Kind::div:
      return divide(fold<T>(ast.args[0], divide), fold<T>(ast.args[1], divide));
  }
  return T();
}

void append_coef_monomial(std::string& out, const Term& t, bool first) {
  Rat c = t.coef;
  if (sgn(c) < 0) {
    out += '-';
    c = -c;
  } else if (!first) {
    out += '+';
  }
  bool one = t.mono.is_one();
  if (one || c != 1) {
    out += c.get_str();
    if (!one) out += '*';
  }
  bool need_star = false;
  for (auto v : kAllVars) {
    unsigned e = t.mono[v];
    if (e == 0) continue;
    if (need_star) out += '*';
    out += var_name(v);
    if (e > 1) out += "^" + std::to_string(e);
    need_star = true;
  }
}

}  // namespace

ExprAst parse(std::string_view text) { return Parser(text).parse_all(); }

MPoly to_poly(const ExprAst& ast) {
  return fold<MPoly>(ast, [](const MPoly& a, const MPoly& b) {
    if (!b.is_constant()) throw NonConstantDivisor("divisor is not a constant; build a rational function instead");
    if (b.is_zero()) throw ZeroPolynomial("division by zero");
    return a * Rat(1 / b.constant_value());
  });
}

RatFunc to_ratfunc(const ExprAst& ast) {
  return fold<RatFunc>(ast, [](const RatFunc& a, const RatFunc& b) { return a / b; });
}

MPoly parse_poly(std::string_view text) { return to_poly(parse(text)); }

std::string print_canonical(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    append_coef_monomial(out, t, first);
    first = false;
  }
  return out;
}

std::string print_canonical(const RatFunc& f) {
  if (f.is_polynomial()) return print_canonical(f.num() * Rat(1 / f.den().constant_value()));
  return "(" + print_canonical(f.num()) + ")/(" + print_canonical(f.den()) + ")";
}

std::string print_rat(const Rat& r) { return r.get_str(); }

Rat parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return Error("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  auto digits = [&](std::size_t& k) {
    std::size_t start = k;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    return s.substr(start, k - start);
  };
  std::string whole = digits(i);
  Rat value;
  if (i < s.size() && s[i] == '/') {
    ++i;
    std::string den = digits(i);
    if (whole.empty() || den.empty() || i != s.size()) throw bad();
    Int d(den, 10);
    if (d == 0) throw bad();
    value = Rat(Int(whole, 10), d);
    value.canonicalize();
  } else {
    std::string frac;
    if (i < s.size() && s[i] == '.') {
      ++i;
      frac = digits(i);
    }
    if (whole.empty() && frac.empty()) throw bad();
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      bool eneg = false;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        eneg = s[i] == '-';
        ++i;
      }
      std::string e = digits(i);
      if (e.empty() || e.size() > 6) throw bad();
      exp10 = std::stol(e) * (eneg ? -1 : 1);
    }
    if (i != s.size()) throw bad();
    Int num((whole.empty() ? std::string("0") : whole) + frac, 10);
    exp10 -= static_cast<long>(frac.size());
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    value = exp10 < 0 ? Rat(num, scale) : Rat(num * scale);
    value.canonicalize();
  }
  return neg ? Rat(-value) : value;
}

}  // namespace cournot
