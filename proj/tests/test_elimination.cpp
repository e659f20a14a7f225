#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cournot/algebra.hpp"
#include "cournot/elimination.hpp"
#include "cournot/models.hpp"
#include "cournot/properties.hpp"
#include "helpers.hpp"

using namespace cournot;
using testing::P;
using testing::R;

namespace {

BiSystem ll_equilibrium() { return stability_system(model_from_name("LL")).equilibrium_system(); }

// N/D and n/d describe the same rational function.
bool same_ratio(const MPoly& N, const MPoly& D, const MPoly& n, const MPoly& d) { return N * d == n * D; }

}  // namespace

TEST_CASE("LL equilibrium triangular form") {
  Triangular tri = triangularize(ll_equilibrium());
  CHECK(equal_up_to_constant(tri.T.to_mpoly(), P("4*c1^3*q1^4-8*c1^2*c2*q1^4+4*c1*c2^2*q1^4+8*c1*c2*q1^2-c2")));
  CHECK(same_ratio(tri.N, tri.D, P("2*c1^2*q1^3+2*c1*c2*q1^3"), P("c2-4*c1*c2*q1^2")));
}

TEST_CASE("an already triangular system") {
  BiSystem sys;
  sys.eqs[0] = P("q1-1");
  sys.eqs[1] = P("q2-q1");
  Triangular tri = triangularize(sys);
  CHECK(equal_up_to_constant(tri.T.to_mpoly(), P("q1-1")));
  CHECK(same_ratio(tri.N, tri.D, P("q1"), P("1")));
}

TEST_CASE("degenerate systems are rejected") {
  BiSystem none;
  none.eqs[0] = P("q1-1");
  none.eqs[1] = P("q1-2");
  CHECK_THROWS_AS(triangularize(none), DegenerateSystem);
  BiSystem shared;
  shared.eqs[0] = P("(q2-q1)*(q1+1)");
  shared.eqs[1] = P("(q2-q1)*(q1-2)");
  CHECK_THROWS_AS(triangularize(shared), DegenerateSystem);
}

TEST_CASE("clearing q2 keeps the sign") {
  MPoly p = P("q2^3+q1*q2");
  MPoly N = P("q1+1");
  MPoly D = P("q1-3");
  MPoly c = clear_q2(p, N, D);
  CHECK_FALSE(c.involves(Var::q2));
  for (long x : {-2L, 0L, 2L, 5L}) {
    Assignment at{{Var::q1, Rat(x)}};
    Rat q2 = N.eval(at) / D.eval(at);
    Rat direct = p.eval(Assignment{{Var::q1, Rat(x)}, {Var::q2, q2}});
    CHECK(sgn(c.eval(at)) == sgn(direct));
  }
  CHECK(clear_q2(P("q1-2"), N, D) == P("q1-2"));
}

TEST_CASE("substituted inequalities") {
  BiSystem sys = ll_equilibrium();
  Triangular tri = triangularize(sys);
  UniSAS u = substitute_ineqs(sys, tri);
  REQUIRE(u.conds.size() == 2);
  CHECK(u.conds[0].product() == P("q1"));
  // q2 > 0 becomes N * D > 0 up to positive factors.
  MPoly nd = P("(2*c1^2*q1^3+2*c1*c2*q1^3)*(c2-4*c1*c2*q1^2)");
  Assignment at{{Var::q1, R("1/3")}, {Var::c1, Rat(1)}, {Var::c2, R("1/2")}};
  CHECK(sgn(u.conds[1].product().eval(at)) == sgn(nd.eval(at)));
  at.set(Var::q1, Rat(2));
  CHECK(sgn(u.conds[1].product().eval(at)) == sgn(nd.eval(at)));
}

TEST_CASE("LL border polynomials") {
  BiSystem sys = ll_equilibrium();
  BorderData bd = border_polynomial(substitute_ineqs(sys, triangularize(sys)));
  CHECK(equal_up_to_constant(bd.BP(), P("c1^11*c2^11*(c1-c2)^6*(c1+c2)^12")));
  CHECK(equal_up_to_constant(bd.SP, P("c1*c2*(c1-c2)*(c1+c2)")));
  bool related = bd.res_T_dT == bd.A0 * bd.disc_T || bd.res_T_dT == -(bd.A0 * bd.disc_T);
  CHECK(related);

  StabilitySystem s = stability_system(model_from_name("LL"));
  BiSystem full = s.full_system();
  BorderData star = border_polynomial(substitute_ineqs(full, triangularize(full)));
  CHECK(equal_up_to_constant(star.SP, P("c1*c2*(c1-4*c2)*(c1-c2)*(c1+c2)*(c1-1/4*c2)*(c1^2-7*c1*c2+c2^2)")));
}

TEST_CASE("hand-sized border polynomial") {
  UniSAS u;
  u.T = UView::of(P("q1^2-c1"), Var::q1);
  u.conds = {CondPoly{{P("q1")}, "q1"}};
  BorderData bd = border_polynomial(u);
  CHECK(equal_up_to_constant(bd.SP, P("c1")));
  CHECK(equal_up_to_constant(bd.disc_T, P("c1")));
}

TEST_CASE("a condition sharing a factor with T") {
  UniSAS u;
  u.T = UView::of(P("q1^2-c1"), Var::q1);
  u.conds = {CondPoly{{P("q1^2-c1")}, "same"}};
  CHECK_THROWS_AS(border_polynomial(u), ZeroBorderPolynomial);
}

TEST_CASE("counting at sample points") {
  BiSystem sys = ll_equilibrium();
  UniSAS u = substitute_ineqs(sys, triangularize(sys));
  CHECK(count_solutions(u, Assignment{{Var::c1, Rat(1)}, {Var::c2, R("1/2")}}) == 1);
  CHECK(count_solutions(u, Assignment{{Var::c1, Rat(1)}, {Var::c2, Rat(2)}}) == 1);
  CHECK(count_solutions(u, Assignment{{Var::c1, R("7/3")}, {Var::c2, R("1/5")}}) == 1);
}

TEST_CASE("certified positive denominators") {
  CHECK(certified_positive(P("c1+c2*q1^2+3")));
  CHECK_FALSE(certified_positive(P("c1-c2")));
  CHECK_FALSE(certified_positive(MPoly()));
}

TEST_CASE("property: elimination preserves the positive zero set") {
  for (auto cost : {CostKind::Quadratic, CostKind::Linear}) {
    for (auto name : kModelNames) {
      auto r = check_zero_set_preservation(model_from_name(name, cost), 41, 20);
      CHECK_MESSAGE(r.pass, r.name << ": " << r.detail);
    }
  }
}
