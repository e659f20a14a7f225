#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cournot/properties.hpp"
#include "helpers.hpp"

using namespace cournot;
using testing::P;
using testing::R;
using testing::U;

namespace {

bool contains(const Interval& iv, double x) { return iv.lo.get_d() <= x && x <= iv.hi.get_d(); }

}  // namespace

TEST_CASE("Sturm counts") {
  CHECK(sturm_count(U("q1^2-2"), Range{Rat(0), std::nullopt}) == 1);
  CHECK(sturm_count(U("q1^2+1")) == 0);
  CHECK(sturm_count(U("q1^4+4*q1^2-1/2")) == 2);
  CHECK(sturm_count(U("(q1-1)^3*(q1+2)")) == 2);
  // Open range: a root at an endpoint is not counted.
  CHECK(sturm_count(U("q1*(q1-1)"), Range{Rat(0), Rat(1)}) == 0);
  CHECK(sturm_count(U("q1*(q1-1)"), Range{Rat(-1), Rat(2)}) == 2);
}

TEST_CASE("root isolation") {
  auto roots = isolate_roots(U("q1^2-4"));
  REQUIRE(roots.size() == 2);
  CHECK(contains(roots[0], -2));
  CHECK(contains(roots[1], 2));
  auto third = isolate_roots(U("q1-1/3"));
  REQUIRE(third.size() == 1);
  CHECK(third[0].is_point());
  CHECK(third[0].lo == Rat(1, 3));
  CHECK(isolate_roots(U("q1^2+1")).empty());

  // SP*_LL on c1 = 1 as a polynomial in c2.
  MPoly sp = P("c1*c2*(c1-4*c2)*(c1-c2)*(c1+c2)*(c1-1/4*c2)*(c1^2-7*c1*c2+c2^2)")
                 .partial_eval(Assignment{{Var::c1, Rat(1)}});
  auto pos = isolate_roots(UPoly::from_mpoly(sp), Range{Rat(0), std::nullopt});
  REQUIRE(pos.size() == 5);
  double expect[] = {(7 - std::sqrt(45.0)) / 2, 0.25, 1, 4, (7 + std::sqrt(45.0)) / 2};
  for (int i = 0; i < 5; ++i) CHECK(contains(pos[i], expect[i]));
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) CHECK(pos[i].hi <= pos[i + 1].lo);
}

TEST_CASE("refinement") {
  UPoly p = U("q1^2-2");
  Interval iv = refine(p, Interval{Rat(1), Rat(2)}, Rat(1, 100));
  CHECK(iv.hi - iv.lo < Rat(1, 100));
  CHECK(contains(iv, std::sqrt(2.0)));
  Interval pt = Interval::point(Rat(3, 7));
  CHECK(refine(p, pt, Rat(1, 100)).lo == Rat(3, 7));
  Interval q = refine(U("q1^4+4*q1^2-1/2"), Interval{Rat(0), Rat(1)}, Rat(1, 1000000));
  CHECK(q.hi - q.lo < Rat(1, 1000000));
  CHECK(std::abs(q.mid().get_d() - 0.348311) < 1e-6);
}

TEST_CASE("counting roots under sign conditions") {
  // LL equilibrium system at (1, 1/2): T with q > 0 and N*D > 0.
  UPoly t = U("q1^4+4*q1^2-1/2");
  UPoly nd = U("(2*q1^3+q1^3)*(1/2-2*q1^2)");
  CHECK(count_with_signs(t, {U("q1"), nd}) == 1);
  UPoly t2 = U("4*q1^4+16*q1^2-2");
  UPoly nd2 = U("(2*q1^3+4*q1^3)*(2-4*q1^2)");
  CHECK(count_with_signs(t2, {U("q1"), nd2}) == 1);
  CHECK(count_with_signs(U("q1^2-1"), {U("q1"), U("-q1")}) == 0);
  CHECK(count_with_signs(U("q1^2-1"), {}) == 2);
  // A condition vanishing at a root excludes it.
  CHECK(count_with_signs(U("(q1-1)*(q1-2)"), {U("q1-1")}) == 1);
  CHECK(count_with_signs(P("q1^2-2"), {SignCondition{P("q1")}}) == 1);
}

TEST_CASE("sign at an algebraic root") {
  UPoly p = U("q1^2-2");
  auto roots = isolate_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(sign_at_root(p, roots[1], U("q1-1")) == 1);
  CHECK(sign_at_root(p, roots[1], U("q1-3/2")) == -1);
  CHECK(sign_at_root(p, roots[0], U("q1^2-2")) == 0);
}

TEST_CASE("Cauchy bound encloses every root") {
  UPoly p = U("3*q1^3-40*q1+7");
  Rat b = cauchy_bound(p);
  for (const auto& iv : isolate_roots(p)) {
    CHECK(iv.lo >= -b);
    CHECK(iv.hi <= b);
  }
}

TEST_CASE("property: exact roots agree with the numeric root finder") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    auto r = check_real_roots_oracle(seed, 150);
    CHECK_MESSAGE(r.pass, r.detail);
  }
}
