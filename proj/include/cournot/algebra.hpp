#pragma once

// Division, resultants, gcds and squarefree parts over Q[q1, ..., K2].

#include <optional>
#include <vector>

#include "cournot/poly.hpp"

namespace cournot {

std::optional<MPoly> try_div(const MPoly& a, const MPoly& b);
// Throws InexactDivision when b does not divide a.
MPoly exact_div(const MPoly& a, const MPoly& b);

// lc(g)^(deg f - deg g + 1) * f  mod g.
UView prem(const UView& f, const UView& g);

struct SubresultantChain {
  std::vector<UView> polys;    // f, g, then the remainders, higher degree input first
  std::vector<MPoly> scalars;  // principal subresultant coefficients; back() is the resultant
  bool swapped = false;        // inputs were exchanged so that deg f >= deg g
};

SubresultantChain subresultant_prs(const UView& f, const UView& g);

// Sylvester-determinant convention.
MPoly resultant(const UView& a, const UView& b);
MPoly resultant(const MPoly& a, const MPoly& b, Var v);

// (-1)^(d(d-1)/2) * res(p, p') / lc(p).
MPoly discriminant(const UView& p);
MPoly discriminant(const MPoly& p, Var v);

// Primitive with integer coefficients and positive leading coefficient.
MPoly normalized(const MPoly& p);
// Same, but only ever scales by a positive rational, so signs are kept.
MPoly positive_primitive(const MPoly& p);
bool equal_up_to_constant(const MPoly& a, const MPoly& b);

MPoly gcd(const MPoly& a, const MPoly& b);
UView gcd(const UView& a, const UView& b);

// gcd of the coefficients, normalized.
MPoly content(const UView& u);
UView primitive_part(const UView& u);

MPoly squarefree_part(const MPoly& p);

// Pairwise coprime squarefree factors whose product is the squarefree part of
// the product of `polys`. Constants are skipped.
std::vector<MPoly> coprime_squarefree_basis(const std::vector<MPoly>& polys);

}  // namespace cournot
