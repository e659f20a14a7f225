#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cournot/dynamics.hpp"
#include "cournot/properties.hpp"
#include "helpers.hpp"

using namespace cournot;
using testing::P;

namespace {

std::filesystem::path tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "cournot-test-dynamics";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("iteration converges for LL") {
  auto m = model_from_name("LL");
  auto o = iterate(m, NumParams::costs(1, 1), {0.1, 0.9});
  REQUIRE(o.converged);
  CHECK((*o.limit)[0] == doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-8));
  CHECK((*o.limit)[1] == doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-8));
  CHECK(o.states.front() == State{0.1, 0.9});
}

TEST_CASE("the equilibrium is a fixed point") {
  for (auto name : kModelNames) {
    auto m = model_from_name(name);
    auto p = NumParams::costs(1, 0.5, 0.3);
    p[Var::K1] = 0.3;
    p[Var::K2] = 0.6;
    auto eq = find_equilibrium(m, p);
    State s = step(m, p, {eq.q1, eq.q2});
    CHECK(s[0] == doctest::Approx(eq.q1).epsilon(1e-9));
    CHECK(s[1] == doctest::Approx(eq.q2).epsilon(1e-9));
  }
}

TEST_CASE("BB with linear costs at ratio 7 does not converge") {
  auto m = model_from_name("BB", CostKind::Linear);
  try {
    auto o = iterate(m, NumParams::costs(1, 7), {0.1, 0.1}, 20000);
    CHECK_FALSE(o.converged);
  } catch (const NonpositiveState&) {
    CHECK(true);
  }
}

TEST_CASE("leaving the positive quadrant") {
  auto m = model_from_name("BB", CostKind::Linear);
  CHECK_THROWS_AS(iterate(m, NumParams::costs(1, 10), {0.2, 0.2}), NonpositiveState);
  CHECK_THROWS_AS(iterate(model_from_name("LL"), NumParams::costs(1, 1), {-1, 1}), NonpositiveState);
}

TEST_CASE("numeric equilibria") {
  auto ll = find_equilibrium(model_from_name("LL"), NumParams::costs(1, 1));
  CHECK(ll.q1 == doctest::Approx(1 / (2 * std::sqrt(2.0))));
  CHECK(ll.spectral_radius < 1);
  auto lin = find_equilibrium(model_from_name("LL", CostKind::Linear), NumParams::costs(1, 4));
  // q1 = c2 / (c1 + c2)^2, q2 = c1 / (c1 + c2)^2.
  CHECK(lin.q1 == doctest::Approx(4.0 / 25));
  CHECK(lin.q2 == doctest::Approx(1.0 / 25));
  auto bb = find_equilibrium(model_from_name("BB"), NumParams::costs(0.5, 0.5));
  CHECK(bb.q1 == doctest::Approx(0.5));
  CHECK(bb.q2 == doctest::Approx(0.5));
  CHECK(bb.spectral_radius == doctest::Approx(0).epsilon(1e-8).scale(1));
  auto c = ll_closed_form(1, 1);
  CHECK(c[0] == doctest::Approx(ll.q1));
}

TEST_CASE("Newton agrees with the closed form") {
  Rng rng(8);
  std::uniform_real_distribution<double> logu(std::log(1e-2), std::log(1e2));
  for (int i = 0; i < 20; ++i) {
    double c1 = std::exp(logu(rng));
    double c2 = std::exp(logu(rng));
    State cf = ll_closed_form(c1, c2);
    auto s = solve_focs(CostKind::Quadratic, c1, c2, {cf[0] * 1.7, cf[1] * 0.6});
    REQUIRE(s.has_value());
    CHECK((*s)[0] == doctest::Approx(cf[0]).epsilon(1e-9));
    CHECK((*s)[1] == doctest::Approx(cf[1]).epsilon(1e-9));
  }
}

TEST_CASE("analytic and finite-difference Jacobians agree") {
  Rng rng(9);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> speed(0.05, 0.95);
  for (auto cost : {CostKind::Quadratic, CostKind::Linear}) {
    for (auto name : kModelNames) {
      auto m = model_from_name(name, cost);
      for (int i = 0; i < 5; ++i) {
        auto p = NumParams::costs(1, std::exp(logu(rng)), speed(rng));
        p[Var::K1] = speed(rng);
        p[Var::K2] = speed(rng);
        auto eq = find_equilibrium(m, p);
        auto a = jacobian_analytic(m, p, {eq.q1, eq.q2});
        auto f = jacobian_fd(m, p, {eq.q1, eq.q2});
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) CHECK(a[r][c] == doctest::Approx(f[r][c]).epsilon(1e-5).scale(1));
        }
      }
    }
  }
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius({{{0, 1}, {-1, 0}}}) == doctest::Approx(1));
  CHECK(spectral_radius({{{0.5, 0}, {0, -0.25}}}) == doctest::Approx(0.5));
  CHECK(spectral_radius({{{0, 2}, {2, 0}}}) == doctest::Approx(2));
}

TEST_CASE("cross validation for BB with linear costs") {
  auto m = model_from_name("BB", CostKind::Linear);
  auto r = analyze(m);
  auto checks = cross_validate(m, r.points);
  CHECK(checks.size() == r.points.size());
  for (const auto& c : checks) CHECK_MESSAGE((c.excluded || c.agrees), c.point.str());
  // Ratio 34 lies far inside the unstable side.
  PointResult far;
  far.point = SamplePoint{{Var::c1, Var::c2}, {Rat(1), Rat(34)}};
  far.stable_count = evaluate_point(r, far.point).stable_count;
  auto one = cross_validate(m, {far});
  CHECK_FALSE(one[0].symbolic_stable);
  CHECK(one[0].spectral_radius > 1);
  CHECK(one[0].agrees);
}

TEST_CASE("every quadratic model converges from nearby starts") {
  Rng rng(17);
  std::uniform_real_distribution<double> logu(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> speed(0.1, 0.9);
  std::uniform_real_distribution<double> jitter(0.8, 1.2);
  for (auto name : kModelNames) {
    auto m = model_from_name(name);
    int failures = 0;
    for (int i = 0; i < 50; ++i) {
      auto p = NumParams::costs(1, std::exp(logu(rng)), speed(rng));
      p[Var::K1] = speed(rng);
      p[Var::K2] = speed(rng);
      auto eq = find_equilibrium(m, p);
      for (int s = 0; s < 3; ++s) {
        State q0{eq.q1 * jitter(rng), eq.q2 * jitter(rng)};
        try {
          if (!iterate(m, p, q0).converged) ++failures;
        } catch (const NonpositiveState&) {
          ++failures;
        }
      }
    }
    CHECK_MESSAGE(failures == 0, name);
  }
}

TEST_CASE("a constant border polynomial draws no contours") {
  auto svg = tmp("const.svg");
  auto csv = tmp("const.csv");
  auto s = emit_plane(MPoly(3L), {SamplePoint{{Var::c1, Var::c2}, {Rat(1), Rat(2)}}}, 20, svg.string(), csv.string());
  CHECK(s.segments == 0);
  CHECK(s.rays == 0);
  CHECK(s.points_off);
  CHECK(s.bound == Rat(3));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "p1,p2,sp_sign");
}

TEST_CASE("plane rays for SP of LL") {
  auto s = emit_plane(P("c1*c2*(c1-c2)*(c1+c2)"),
                      {SamplePoint{{Var::c1, Var::c2}, {Rat(1), Rat(2)}},
                       SamplePoint{{Var::c1, Var::c2}, {Rat(2), Rat(1)}}},
                      40, tmp("ll.svg").string(), tmp("ll.csv").string());
  CHECK(s.rays == 1);
  CHECK(s.segments > 0);
}

TEST_CASE("orbit CSV") {
  auto o = iterate(model_from_name("LL"), NumParams::costs(1, 1), {0.1, 0.9}, 5);
  auto path = tmp("orbit.csv");
  write_orbit_csv(o, path.string());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,q1,q2");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == o.states.size());
}

TEST_CASE("polynomial roots") {
  auto r = polynomial_roots({-2, 0, 1});
  REQUIRE(r.size() == 2);
  double a = std::abs(r[0].real());
  CHECK(a == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(r[0].imag()) < 1e-12);
}
