#pragma once

// Exact real roots of univariate polynomials over Q.

#include <optional>
#include <vector>

#include "cournot/poly.hpp"

namespace cournot {

// Dense univariate polynomial, c[i] is the coefficient of x^i; no trailing zeros.
struct UPoly {
  std::vector<Rat> c;

  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  // p must involve at most one variable.
  static UPoly from_mpoly(const MPoly& p);
  MPoly to_mpoly(Var v) const;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Rat& lc() const { return c.back(); }
  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const { return sgn(eval(x)); }
  double eval_double(double x) const;
  UPoly derivative() const;
  void trim();
};

UPoly operator*(const UPoly& a, const UPoly& b);
UPoly rem(const UPoly& a, const UPoly& b);
UPoly quo(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic; gcd(0, 0) = 0
UPoly squarefree_part(const UPoly& p);
// Positive rational multiple with coprime integer coefficients.
UPoly primitive_positive(const UPoly& p);

struct Interval {
  enum class Kind { open, point };
  Rat lo;
  Rat hi;
  Kind kind = Kind::open;

  static Interval point(const Rat& x) { return Interval{x, x, Kind::point}; }
  bool is_point() const { return kind == Kind::point; }
  Rat mid() const { return (lo + hi) / 2; }
};

// lo/hi absent means unbounded on that side.
struct Range {
  std::optional<Rat> lo;
  std::optional<Rat> hi;
};

struct SignCondition {
  MPoly poly;  // required > 0
};

// Distinct real roots in the open range.
unsigned sturm_count(const UPoly& p, const Range& range = {});
unsigned sturm_count(const MPoly& p, const Range& range = {});

Rat cauchy_bound(const UPoly& p);

// Sorted, disjoint; open intervals have non-root endpoints where the
// squarefree part takes opposite signs.
std::vector<Interval> isolate_roots(const UPoly& p);
std::vector<Interval> isolate_roots(const MPoly& p);
// Roots inside the open range only.
std::vector<Interval> isolate_roots(const UPoly& p, const Range& range);

Interval refine(const UPoly& p, const Interval& iv, const Rat& width);
Interval refine(const MPoly& p, const Interval& iv, const Rat& width);

// Sign of q at the root of p isolated by iv (0 if q vanishes there). iv may
// be narrowed in place.
int sign_at_root(const UPoly& p, Interval& iv, const UPoly& q);

unsigned count_with_signs(const UPoly& T, const std::vector<UPoly>& conds);
unsigned count_with_signs(const MPoly& T, const std::vector<SignCondition>& conds);

}  // namespace cournot
