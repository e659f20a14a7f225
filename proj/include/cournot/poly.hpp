#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Every polynomial lives over the same fixed, ordered alphabet of seven
// variables. Terms are kept sorted under the graded lexicographic order
// (total degree first, then exponents compared from q1 to K2), largest term
// first, with no zero coefficients. Two equal polynomials therefore always
// have identical term lists.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cournot/errors.hpp"

namespace cournot {

using Int = mpz_class;
using Rat = mpq_class;

enum class Var : std::uint8_t { q1 = 0, q2, c1, c2, K, K1, K2 };

inline constexpr std::size_t kVarCount = 7;
inline constexpr std::array<Var, kVarCount> kAllVars = {Var::q1, Var::q2, Var::c1, Var::c2,
                                                        Var::K,  Var::K1, Var::K2};

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

inline constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }

struct Monomial {
  std::array<std::uint16_t, kVarCount> exp{};

  static Monomial of(Var v, unsigned power = 1) {
    Monomial m;
    m.exp[index(v)] = static_cast<std::uint16_t>(power);
    return m;
  }

  unsigned operator[](Var v) const { return exp[index(v)]; }
  unsigned degree() const;
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& o) const;
  // Requires o.divides(*this).
  Monomial operator/(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic comparison.
std::strong_ordering grlex(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial mono;
  Rat coef;
};

// A (partial) point: values for some subset of the alphabet.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<Var, Rat>> values);

  Assignment& set(Var v, Rat value);
  bool has(Var v) const { return values_[index(v)].has_value(); }
  const Rat& get(Var v) const;

 private:
  std::array<std::optional<Rat>, kVarCount> values_;
};

using VarMask = std::uint8_t;

class MPoly {
 public:
  MPoly() = default;
  MPoly(const Rat& c);  // NOLINT(google-explicit-constructor): constants promote freely
  MPoly(long c);        // NOLINT(google-explicit-constructor)

  static MPoly variable(Var v);
  static MPoly monomial(const Monomial& m, const Rat& c);
  // Accepts terms in any order, possibly with repeats or zeros.
  static MPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  // Value of a constant polynomial (0 for the zero polynomial).
  Rat constant_value() const;
  Rat constant_term() const;

  const Term& leading_term() const { return terms_.front(); }
  const Rat& leading_coefficient() const { return terms_.front().coef; }

  unsigned degree(Var v) const;
  unsigned min_degree(Var v) const;
  unsigned total_degree() const;
  VarMask variables() const;
  bool involves(Var v) const { return (variables() >> index(v)) & 1u; }

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rat& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
  friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }

  MPoly pow(unsigned n) const;
  MPoly mul_monomial(const Monomial& m, const Rat& c) const;

  friend bool operator==(const MPoly& a, const MPoly& b);

  // Exact value; throws MissingAssignment if a variable of p is unassigned.
  Rat eval(const Assignment& point) const;
  double eval_double(const std::array<double, kVarCount>& point) const;

  // Substitutes the assigned variables only; the rest stay symbolic.
  MPoly partial_eval(const Assignment& point) const;
  MPoly substitute(Var v, const MPoly& value) const;

  MPoly derivative(Var v) const;

 private:
  explicit MPoly(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
  std::vector<Term> terms_;
};

MPoly derivative(const MPoly& p, Var v);
Rat eval(const MPoly& p, const Assignment& point);

enum class RingOp { add, sub, mul };
MPoly arith(const MPoly& a, const MPoly& b, RingOp op);

// Univariate view: p = sum_i coeffs[i] * main^i, coefficients free of main.
struct UView {
  Var main = Var::q1;
  std::vector<MPoly> coeffs;  // empty for the zero polynomial; back() nonzero otherwise

  static UView of(const MPoly& p, Var main);
  static UView from_coeffs(Var main, std::vector<MPoly> coeffs);

  MPoly to_mpoly() const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const MPoly& lc() const { return coeffs.back(); }
  void trim();
};

}  // namespace cournot
