#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cournot/algebra.hpp"
#include "cournot/properties.hpp"
#include "helpers.hpp"

using namespace cournot;
using testing::P;
using testing::R;
using testing::U;

namespace {

const char* kTLL = "4*c1^3*q1^4-8*c1^2*c2*q1^4+4*c1*c2^2*q1^4+8*c1*c2*q1^2-c2";

UView uv(const char* text, Var v = Var::q1) { return UView::of(P(text), v); }

}  // namespace

TEST_CASE("arithmetic") {
  CHECK(print_canonical(P("(q1+q2)*(q1+q2)")) == "q1^2+2*q1*q2+q2^2");
  CHECK(arith(P("c1-c2"), P("c1+c2"), RingOp::mul) == P("c1^2-c2^2"));
  MPoly p = P("3*q1*c2-K/2");
  CHECK(arith(p, MPoly(), RingOp::add) == p);
  CHECK(arith(p, p, RingOp::sub).is_zero());
  CHECK(P("q1-q1").is_zero());
  CHECK(P("(q1+1)^5").total_degree() == 5);
}

TEST_CASE("terms are sorted in graded lexicographic order") {
  MPoly p = P("c2 + q1^2 + q1*q2 + 7");
  const auto& t = p.terms();
  REQUIRE(t.size() == 4);
  CHECK(t[0].mono[Var::q1] == 2);
  CHECK(t[1].mono[Var::q2] == 1);
  CHECK(t[2].mono[Var::c2] == 1);
  CHECK(t[3].mono.is_one());
  CHECK(MPoly::from_terms({{Monomial::of(Var::K), Rat(2)}, {Monomial::of(Var::K), Rat(-2)}}).is_zero());
}

TEST_CASE("derivative") {
  CHECK(derivative(P("q1^4+4*q1^2"), Var::q1) == P("4*q1^3+8*q1"));
  CHECK(derivative(P("c1*q1"), Var::q2).is_zero());
  CHECK(derivative(P(kTLL), Var::q1) == P("16*c1^3*q1^3-32*c1^2*c2*q1^3+16*c1*c2^2*q1^3+16*c1*c2*q1"));
}

TEST_CASE("evaluation") {
  CHECK(eval(P("q1^2+c2"), Assignment{{Var::q1, R("1/2")}, {Var::c2, Rat(2)}}) == R("9/4"));
  CHECK(eval(P("c1*c2*(c1-c2)*(c1+c2)"), Assignment{{Var::c1, Rat(1)}, {Var::c2, Rat(1)}}) == 0);
  MPoly bp = Rat(-67108864) * P("c1^11*c2^11*(c1-c2)^6*(c1+c2)^12");
  Rat expect = Rat(-67108864) * Rat(2048) * Rat(531441);
  CHECK(eval(bp, Assignment{{Var::c1, Rat(1)}, {Var::c2, Rat(2)}}) == expect);
  CHECK_THROWS_AS(eval(P("q1+c1"), Assignment{{Var::q1, Rat(1)}}), MissingAssignment);
  CHECK(P("q1+c1").partial_eval(Assignment{{Var::q1, Rat(1)}}) == P("1+c1"));
  CHECK(P("q1^2+q2").substitute(Var::q1, P("c1+1")) == P("c1^2+2*c1+1+q2"));
}

TEST_CASE("univariate view") {
  UView u = uv("c1*q1^2 + q1*c2 - 3", Var::q1);
  CHECK(u.degree() == 2);
  CHECK(u.lc() == P("c1"));
  CHECK(u.coeffs[0] == MPoly(-3L));
  CHECK(u.to_mpoly() == P("c1*q1^2 + q1*c2 - 3"));
}

TEST_CASE("gcd") {
  CHECK(equal_up_to_constant(gcd(uv("q1^2-1"), uv("q1-1")).to_mpoly(), P("q1-1")));
  CHECK(gcd(uv("q1^2+1"), uv("q1+2")).degree() == 0);
  CHECK(equal_up_to_constant(gcd(P("(q1+1)^2*q1^3"), P("3*q1^2*(q1+1)")), P("q1^2*(q1+1)")));
  CHECK(equal_up_to_constant(gcd(P("(c1-c2)^2*(c1+K)"), P("(c1-c2)*(c2+1)")), P("c1-c2")));
  CHECK(gcd(P("c1^2+c2^2"), P("c1+c2")) == MPoly(1L));
}

TEST_CASE("squarefree parts") {
  CHECK(equal_up_to_constant(squarefree_part(P("q1^3")), P("q1")));
  CHECK(equal_up_to_constant(squarefree_part(P("(c1-c2)^6*(c1+c2)^12")), P("(c1-c2)*(c1+c2)")));
  MPoly bp = Rat(-67108864) * P("c1^11*c2^11*(c1-c2)^6*(c1+c2)^12");
  CHECK(equal_up_to_constant(squarefree_part(bp), P("c1*c2*(c1-c2)*(c1+c2)")));
  auto basis = coprime_squarefree_basis({P("(c1-c2)*(c1+c2)"), P("(c1-c2)^2*c2"), MPoly(5L)});
  MPoly prod(1L);
  for (const auto& f : basis) prod *= f;
  CHECK(basis.size() == 3);
  CHECK(equal_up_to_constant(prod, P("(c1-c2)*(c1+c2)*c2")));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) CHECK(gcd(basis[i], basis[j]).is_constant());
  }
}

TEST_CASE("resultants") {
  CHECK(resultant(uv("q1-2"), uv("q1-5")) == MPoly(-3L));
  CHECK(resultant(uv("q1^2-1"), uv("q1-1")).is_zero());
  MPoly r = resultant(P(kTLL), P("q1"), Var::q1);
  CHECK((r == P("c2") || r == P("-c2")));
  // Sylvester convention: res(a, b) = lc(a)^deg(b) prod b(roots of a).
  CHECK(resultant(uv("2*q1-1"), uv("q1^2+1")) == MPoly(Rat(5)));
  CHECK_THROWS_AS(resultant(UView::of(MPoly(), Var::q1), uv("q1")), ZeroPolynomial);
}

TEST_CASE("resultants agree with the Sylvester determinant") {
  Rng rng(12);
  for (int i = 0; i < 40; ++i) {
    UPoly a = random_upoly(rng, 1 + i % 5, 7);
    UPoly b = random_upoly(rng, 1 + (i / 5) % 4, 7);
    CHECK(resultant(a.to_mpoly(Var::q1), b.to_mpoly(Var::q1), Var::q1).constant_value() == sylvester_resultant(a, b));
  }
}

TEST_CASE("discriminants") {
  CHECK(discriminant(P("q1^2+c1*q1+c2"), Var::q1) == P("c1^2-4*c2"));
  CHECK(discriminant(P("(q1-1)^2"), Var::q1).is_zero());
  CHECK(discriminant(P("q1^3+c1*q1+c2"), Var::q1) == P("-4*c1^3-27*c2^2"));
  CHECK_THROWS_AS(discriminant(P("c1"), Var::q1), DegreeZero);
}

TEST_CASE("normalization helpers") {
  CHECK(normalized(P("-4*c1+6*c2")) == P("2*c1-3*c2"));
  CHECK(positive_primitive(P("-4*c1+6*c2")) == P("-2*c1+3*c2"));
  CHECK(equal_up_to_constant(P("c1-1/9*c2"), P("9*c1-c2")));
  CHECK_FALSE(equal_up_to_constant(P("c1-c2"), P("c1+c2")));
  CHECK(exact_div(P("c1^2-c2^2"), P("c1+c2")) == P("c1-c2"));
  CHECK_THROWS_AS(exact_div(P("c1^2+c2^2"), P("c1+c2")), InexactDivision);
  CHECK_FALSE(try_div(P("q1"), P("q2")).has_value());
}

TEST_CASE("property: ring axioms") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto r = check_ring_axioms(seed, 60);
    CHECK_MESSAGE(r.pass, r.detail);
  }
}

TEST_CASE("property: resultant and discriminant identities") {
  for (std::uint64_t seed : {10u, 11u}) {
    auto r = check_resultant_identities(seed, 40);
    CHECK_MESSAGE(r.pass, r.detail);
    auto d = check_discriminant_identities(seed, 40);
    CHECK_MESSAGE(d.pass, d.detail);
  }
}
