#include "cournot/elimination.hpp"

#include "cournot/algebra.hpp"
#include "cournot/parallel.hpp"

namespace cournot {

MPoly CondPoly::product() const {
  MPoly p(1L);
  for (const auto& f : factors) p *= f;
  return p;
}

std::vector<MPoly> BorderData::bp_factors() const {
  std::vector<MPoly> out{A0, res_T_dT};
  out.insert(out.end(), res_list.begin(), res_list.end());
  return out;
}

MPoly BorderData::BP() const {
  MPoly p(1L);
  for (const auto& f : bp_factors()) p *= f;
  return p;
}

bool certified_positive(const MPoly& p) {
  if (p.is_zero()) return false;
  for (const auto& t : p.terms()) {
    if (sgn(t.coef) <= 0) return false;
  }
  return true;
}

Triangular triangularize(const BiSystem& sys) {
  UView a = UView::of(normalized(sys.eqs[0]), Var::q2);
  UView b = UView::of(normalized(sys.eqs[1]), Var::q2);
  if (a.degree() < 1 && b.degree() < 1) throw DegenerateSystem("neither equation involves q2");
  auto chain = subresultant_prs(a, b);
  if (chain.polys.back().degree() > 0) {
    throw DegenerateSystem("the equations share a factor involving q2");
  }
  MPoly r = chain.scalars.back();
  if (r.is_zero()) throw DegenerateSystem("resultant in q2 vanishes identically");
  const UView* lin = nullptr;
  for (const auto& p : chain.polys) {
    if (p.degree() == 1) lin = &p;
  }
  if (lin == nullptr) throw DegenerateSystem("no subresultant of degree 1 in q2; back-substitution is not linear");

  Triangular tri;
  tri.removed = r.min_degree(Var::q1);
  if (tri.removed > 0) r = exact_div(r, MPoly::monomial(Monomial::of(Var::q1, tri.removed), Rat(1)));
  if (r.degree(Var::q1) < 1) throw DegenerateSystem("eliminant does not involve q1");
  tri.T = UView::of(normalized(r), Var::q1);
  // lin = D*q2 - N
  MPoly D = lin->coeffs[1];
  MPoly N = -lin->coeffs[0];
  MPoly scale = normalized(D);
  Rat f = scale.leading_coefficient() / D.leading_coefficient();
  tri.D = D * f;
  tri.N = N * f;
  return tri;
}

MPoly clear_q2(const MPoly& p, const MPoly& N, const MPoly& D) {
  UView u = UView::of(p, Var::q2);
  int k = u.degree();
  if (k <= 0) return p;
  if (k % 2 != 0) ++k;
  std::vector<MPoly> npow{MPoly(1L)};
  std::vector<MPoly> dpow{MPoly(1L)};
  for (int i = 1; i <= k; ++i) {
    npow.push_back(npow.back() * N);
    dpow.push_back(dpow.back() * D);
  }
  MPoly out;
  for (int i = 0; i <= u.degree(); ++i) {
    const MPoly& c = u.coeffs[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    out += c * npow[static_cast<std::size_t>(i)] * dpow[static_cast<std::size_t>(k - i)];
  }
  return out;
}

namespace {

MPoly cleared(const MPoly& p, const Triangular& tri, const std::string& label) {
  MPoly s = clear_q2(p, tri.N, tri.D);
  if (s.is_zero()) throw DegenerateSystem("condition '" + label + "' vanishes identically after substitution");
  return positive_primitive(s);
}

}  // namespace

UniSAS substitute_ineqs(const BiSystem& sys, const Triangular& tri) {
  UniSAS u;
  u.T = tri.T;
  u.param_constraints = sys.param_constraints;
  for (const auto& in : sys.ineqs) {
    CondPoly c;
    c.label = in.label;
    c.factors.push_back(cleared(in.f.num(), tri, in.label));
    const MPoly& den = in.f.den();
    if (!den.is_constant()) {
      MPoly d = cleared(den, tri, in.label);
      if (certified_positive(den)) {
        u.border_only.push_back(d);
      } else {
        c.factors.push_back(d);
      }
    }
    u.conds.push_back(std::move(c));
  }
  for (const auto& in : sys.border_only) {
    u.border_only.push_back(cleared(in.f.num(), tri, in.label));
    if (!in.f.den().is_constant()) u.border_only.push_back(cleared(in.f.den(), tri, in.label));
  }
  return u;
}

BorderData border_polynomial(const UniSAS& u) {
  if (u.T.degree() < 1) throw DegreeZero("T must have positive degree in q1");
  BorderData bd;
  bd.A0 = u.T.lc();
  UView dT = UView::of(u.T.to_mpoly().derivative(Var::q1), Var::q1);

  std::vector<MPoly> factors;
  for (const auto& c : u.conds) factors.insert(factors.end(), c.factors.begin(), c.factors.end());
  factors.insert(factors.end(), u.border_only.begin(), u.border_only.end());

  // Slot 0 is res(T, T'); the rest follow `factors`.
  auto results = parallel_map<MPoly>(factors.size() + 1, [&](std::size_t i) {
    if (i == 0) return resultant(u.T, dT);
    return resultant(u.T, UView::of(factors[i - 1], Var::q1));
  });
  bd.res_T_dT = results[0];
  int d = u.T.degree();
  MPoly disc = exact_div(bd.res_T_dT, bd.A0);
  bd.disc_T = (d * (d - 1) / 2) % 2 != 0 ? -disc : disc;
  bd.res_list.assign(results.begin() + 1, results.end());
  for (const auto& r : bd.res_list) {
    if (r.is_zero()) throw ZeroBorderPolynomial("a condition shares a factor with T");
  }
  if (bd.res_T_dT.is_zero()) throw ZeroBorderPolynomial("T is not squarefree");

  bd.sp_factors = coprime_squarefree_basis(bd.bp_factors());
  MPoly sp(1L);
  for (const auto& f : bd.sp_factors) sp *= f;
  bd.SP = normalized(sp);
  return bd;
}

unsigned count_solutions(const UniSAS& u, const Assignment& params) {
  UPoly T = UPoly::from_mpoly(u.T.to_mpoly().partial_eval(params));
  std::vector<UPoly> conds;
  for (const auto& c : u.conds) {
    UPoly prod(std::vector<Rat>{Rat(1)});
    for (const auto& f : c.factors) prod = prod * UPoly::from_mpoly(f.partial_eval(params));
    conds.push_back(std::move(prod));
  }
  if (T.is_zero()) throw DegenerateSystem("T vanishes identically at this parameter point");
  return count_with_signs(T, conds);
}

}  // namespace cournot
