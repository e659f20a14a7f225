#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "json.hpp"

#include "cournot/algebra.hpp"
#include "cournot/pipeline.hpp"
#include "helpers.hpp"

using namespace cournot;
using testing::P;
using testing::R;

namespace {

const char* kSpStarLL = "c1*c2*(c1-4*c2)*(c1-c2)*(c1+c2)*(c1-1/4*c2)*(c1^2-7*c1*c2+c2^2)";

SamplePoint pt(const char* c1, const char* c2) { return SamplePoint{{Var::c1, Var::c2}, {R(c1), R(c2)}}; }

const StabilityReport& ll() {
  static const StabilityReport r = analyze(model_from_name("LL"));
  return r;
}

}  // namespace

TEST_CASE("normalization") {
  auto n = normalize_params(model_from_name("LL"));
  CHECK(n.free_params == std::vector<Var>{Var::c2});
  CHECK(n.fixed.get(Var::c1) == Rat(1));
  CHECK(normalize_params(model_from_name("AR")).free_params == std::vector<Var>{Var::c2, Var::K});
  CHECK(normalize_params(model_from_name("AA")).free_params == std::vector<Var>{Var::c2, Var::K1, Var::K2});
  SamplePoint p = normalize_point(pt("4", "1"));
  CHECK(p.get(Var::c1) == Rat(1));
  CHECK(p.get(Var::c2) == Rat(1, 4));
  CHECK(pt("1", "1/2").str() == "(c1, c2) = (1, 1/2)");
}

TEST_CASE("one-dimensional decompositions") {
  MPoly star = P(kSpStarLL).partial_eval(Assignment{{Var::c1, Rat(1)}});
  auto d = decompose(star, {Var::c2});
  CHECK(d.cells.size() == 6);  // one sample per open sector
  std::size_t sectors = 0;
  for (const auto& c : d.cells) sectors += c[0] % 2 == 0;
  CHECK(sectors == 6);

  MPoly eq = P("c1*c2*(c1-c2)*(c1+c2)").partial_eval(Assignment{{Var::c1, Rat(1)}});
  auto e = decompose(eq, {Var::c2});
  sectors = 0;
  for (const auto& c : e.cells) sectors += c[0] % 2 == 0;
  CHECK(sectors == 2);
  CHECK(e.lower[0] == 0);
  CHECK(e.upper[0] > 1);
}

TEST_CASE("classifying points") {
  MPoly star = P(kSpStarLL).partial_eval(Assignment{{Var::c1, Rat(1)}});
  auto d = decompose(star, {Var::c2});
  std::set<std::vector<int>> cells;
  for (const char* c2 : {"1/10", "1/2", "2", "5", "10", "1/5"}) cells.insert(classify_point(d, pt("1", c2)));
  CHECK(cells.size() == 6);
  CHECK_THROWS_AS(classify_point(d, pt("1", "1")), OnBoundary);
  CHECK_THROWS_AS(classify_point(d, pt("1", "4")), OnBoundary);
}

TEST_CASE("a factor without roots in the box gives one cell") {
  auto d = decompose(P("c2^2+1"), {Var::c2});
  CHECK(d.cells.size() == 1);
  CHECK(d.points.size() == 1);
}

TEST_CASE("parameter limits") {
  std::vector<Var> four{Var::c2, Var::K, Var::K1, Var::K2};
  CHECK_THROWS_AS(decompose(P("c2-1"), four), TooManyParameters);
  CHECK_THROWS_AS(decompose(P("c2-1"), {}), TooManyParameters);
}

TEST_CASE("LL is stable everywhere") {
  const auto& r = ll();
  CHECK(r.verdict == "unique-stable-everywhere");
  CHECK_FALSE(r.counterexample.has_value());
  CHECK(equal_up_to_constant(r.equilibrium_border.SP, P("c1*c2*(c1-c2)*(c1+c2)")));
  for (const auto& p : r.points) {
    CHECK(p.equilibrium_count == 1);
    CHECK(p.stable_count == 1);
  }
  auto at = evaluate_point(r, pt("3", "3/2"));
  CHECK(at.point.get(Var::c2) == Rat(1, 2));
  CHECK(at.stable_count == 1);
}

TEST_CASE("BB: quadratic and linear costs") {
  auto q = analyze(model_from_name("BB"));
  CHECK(q.verdict == "unique-stable-everywhere");
  for (const auto& p : q.points) CHECK(p.equilibrium_count == 1);

  auto lin = analyze(model_from_name("BB", CostKind::Linear));
  CHECK(lin.verdict == "conditional");
  bool found = false;
  for (const auto& f : lin.full_border.sp_factors) found = found || equal_up_to_constant(f, P("c1^2-6*c1*c2+c2^2"));
  CHECK(found);
  CHECK_FALSE(lin.counterexample.has_value());  // only set when an equilibrium count is not 1
  bool unstable = false;
  for (const auto& p : lin.points) unstable = unstable || p.stable_count == 0;
  CHECK(unstable);
  // Stable near equal costs, unstable at ratio 10.
  CHECK(evaluate_point(lin, pt("1", "1")).stable_count == 1);
  CHECK(evaluate_point(lin, pt("1", "1/10")).stable_count == 0);
}

TEST_CASE("report JSON") {
  std::string a = report_json(ll());
  auto j = nlohmann::json::parse(a);
  for (const char* key : {"model", "cost", "T", "back_substitution", "conditions", "BP", "SP", "SP_factors",
                          "equilibrium", "decomposition", "points", "verdict", "paper_comparison"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j["model"] == "LL");
  CHECK(j["verdict"] == "unique-stable-everywhere");
  CHECK(j["paper_comparison"].size() == 2);
  for (const auto& c : j["paper_comparison"]) CHECK(c["SP_match"] == true);
  // Deterministic across runs.
  CHECK(report_json(analyze(model_from_name("LL"))) == a);
}

TEST_CASE("reference fixtures cover the published models") {
  std::set<std::string> models;
  for (const auto& f : reference_fixtures()) models.insert(f.model);
  CHECK(models == std::set<std::string>{"LL", "LB", "BB", "LR", "AR"});
}

TEST_CASE("slice factors") {
  Assignment one{{Var::c1, Rat(1)}};
  auto f = slice_factors({P("2*c1"), P("c1*c2-2")}, one);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == P("c2-2"));
  CHECK_THROWS_AS(slice_factors({P("c1-1")}, one), OnBoundary);
}
