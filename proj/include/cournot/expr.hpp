#pragma once

// Text format for polynomials:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
// Multiplication is always explicit ("2*c1", never "2c1").

#include <string>
#include <string_view>
#include <vector>

#include "cournot/poly.hpp"
#include "cournot/ratfunc.hpp"

namespace cournot {

struct ExprAst {
  enum class Kind { literal, variable, add, sub, neg, mul, pow, div };

  Kind kind = Kind::literal;
  Rat value;              // literal
  Var var = Var::q1;      // variable
  unsigned exponent = 0;  // pow
  std::vector<ExprAst> args;
};

ExprAst parse(std::string_view text);

// Divisors must be nonzero constants; throws NonConstantDivisor otherwise.
MPoly to_poly(const ExprAst& ast);
RatFunc to_ratfunc(const ExprAst& ast);

MPoly parse_poly(std::string_view text);

std::string print_canonical(const MPoly& p);
std::string print_canonical(const RatFunc& f);
std::string print_rat(const Rat& r);

// Accepts "a/b", integers and decimals such as "-0.125" or "1e-3", exactly.
Rat parse_rational(std::string_view text);

}  // namespace cournot
