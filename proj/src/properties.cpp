#include "cournot/properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cournot/algebra.hpp"
#include "cournot/dynamics.hpp"
#include "cournot/elimination.hpp"
#include "cournot/expr.hpp"

namespace cournot {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

void fail(PropertyResult& r, const std::string& what) {
  if (r.pass) r.detail = what;
  r.pass = false;
}

MPoly upoly_to(const UPoly& p) { return p.to_mpoly(Var::q1); }

Rat resultant_of(const UPoly& a, const UPoly& b) {
  return resultant(upoly_to(a), upoly_to(b), Var::q1).constant_value();
}

Rat discriminant_of(const UPoly& a) { return discriminant(upoly_to(a), Var::q1).constant_value(); }

Assignment random_params(Rng& rng, const ModelSpec& m) {
  Assignment a;
  a.set(Var::c1, random_positive(rng, 40));
  a.set(Var::c2, random_positive(rng, 40));
  for (auto v : m.params()) {
    if (v == Var::c1 || v == Var::c2) continue;
    Rat k(uniform(rng, 1, 63), 64);
    k.canonicalize();
    a.set(v, k);
  }
  return a;
}

NumParams numeric(const Assignment& a, const ModelSpec& m) {
  NumParams p;
  for (auto v : m.params()) p[v] = a.get(v).get_d();
  return p;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

MPoly random_poly(Rng& rng, const std::vector<Var>& vars, unsigned max_deg, unsigned max_terms) {
  std::vector<Term> terms;
  long n = uniform(rng, 1, max_terms);
  for (long t = 0; t < n; ++t) {
    Monomial mono;
    long budget = uniform(rng, 0, max_deg);
    for (long d = 0; d < budget; ++d) {
      Var v = vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(vars.size()) - 1))];
      mono.exp[index(v)] += 1;
    }
    long c = uniform(rng, -9, 9);
    if (c == 0) c = 1;
    Rat coef(c, uniform(rng, 1, 3));
    coef.canonicalize();
    terms.push_back(Term{mono, coef});
  }
  return MPoly::from_terms(std::move(terms));
}

UPoly random_upoly(Rng& rng, unsigned deg, long coef_range) {
  std::vector<Rat> c(deg + 1);
  for (auto& x : c) x = Rat(uniform(rng, -coef_range, coef_range));
  if (c.back() == 0) c.back() = 1;
  return UPoly(c);
}

Rat random_positive(Rng& rng, long n) {
  Rat r(uniform(rng, 1, n), uniform(rng, 1, n));
  r.canonicalize();
  return r;
}

Rat sylvester_resultant(const UPoly& a, const UPoly& b) {
  int m = a.degree();
  int n = b.degree();
  if (m < 0 || n < 0) return Rat(0);
  if (m == 0 && n == 0) return Rat(1);
  std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rat>> s(size, std::vector<Rat>(size, Rat(0)));
  // Rows hold coefficients from the leading one down.
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a.c[static_cast<std::size_t>(m - k)];
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b.c[static_cast<std::size_t>(n - k)];
  }
  Rat det(1);
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t piv = col;
    while (piv < size && s[piv][col] == 0) ++piv;
    if (piv == size) return Rat(0);
    if (piv != col) {
      std::swap(s[piv], s[col]);
      det = -det;
    }
    det *= s[col][col];
    for (std::size_t r = col + 1; r < size; ++r) {
      if (s[r][col] == 0) continue;
      Rat f = s[r][col] / s[col][col];
      for (std::size_t k = col; k < size; ++k) s[r][k] -= f * s[col][k];
    }
  }
  return det;
}

PropertyResult check_ring_axioms(std::uint64_t seed, unsigned trials) {
  PropertyResult r{"ring axioms", true, 0, ""};
  Rng rng(seed);
  std::vector<Var> vars{Var::q1, Var::q2, Var::c1, Var::K};
  for (unsigned t = 0; t < trials; ++t, ++r.trials) {
    MPoly a = random_poly(rng, vars, 3, 5);
    MPoly b = random_poly(rng, vars, 3, 5);
    MPoly c = random_poly(rng, vars, 2, 4);
    if (!(a + b == b + a)) fail(r, "addition not commutative");
    if (!(a * b == b * a)) fail(r, "multiplication not commutative");
    if (!((a * b) * c == a * (b * c))) fail(r, "multiplication not associative");
    if (!((a + b) * c == a * c + b * c)) fail(r, "distributivity fails");
    if (!((a - b) + b == a)) fail(r, "subtraction is not the inverse of addition");
    if (!b.is_zero() && !(exact_div(a * b, b) == a)) fail(r, "exact division does not undo multiplication");
    if (!((a * b).derivative(Var::q1) == a.derivative(Var::q1) * b + a * b.derivative(Var::q1))) {
      fail(r, "product rule fails");
    }
    Assignment at{{Var::q1, random_positive(rng, 9)}, {Var::q2, Rat(uniform(rng, -5, 5))},
                  {Var::c1, random_positive(rng, 9)}, {Var::K, Rat(1, 3)}};
    if ((a * b).eval(at) != a.eval(at) * b.eval(at)) fail(r, "evaluation is not a ring map");
    if (!(a.pow(3) == a * a * a)) fail(r, "pow disagrees with repeated multiplication");
  }
  return r;
}

PropertyResult check_resultant_identities(std::uint64_t seed, unsigned trials) {
  PropertyResult r{"resultant identities", true, 0, ""};
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t, ++r.trials) {
    UPoly f = random_upoly(rng, static_cast<unsigned>(uniform(rng, 1, 5)), 6);
    UPoly g = random_upoly(rng, static_cast<unsigned>(uniform(rng, 1, 5)), 6);
    UPoly h = random_upoly(rng, static_cast<unsigned>(uniform(rng, 1, 3)), 6);
    Rat rfg = resultant_of(f, g);
    if (rfg != sylvester_resultant(f, g)) fail(r, "resultant differs from the Sylvester determinant");
    int sign = (f.degree() * g.degree()) % 2 ? -1 : 1;
    if (resultant_of(g, f) != sign * rfg) fail(r, "res(g, f) != (-1)^(mn) res(f, g)");
    if (resultant_of(f * g, h) != resultant_of(f, h) * resultant_of(g, h)) fail(r, "resultant is not multiplicative");

    // Specialization commutes with the resultant when leading coefficients survive.
    std::vector<Var> vars{Var::q1, Var::q2};
    MPoly a = random_poly(rng, vars, 3, 5);
    MPoly b = random_poly(rng, vars, 3, 5);
    if (a.degree(Var::q2) == 0 || b.degree(Var::q2) == 0) continue;
    MPoly res = resultant(a, b, Var::q2);
    Rat x = Rat(uniform(rng, -6, 6), uniform(rng, 1, 4));
    x.canonicalize();
    Assignment at{{Var::q1, x}};
    UView ua = UView::of(a, Var::q2);
    UView ub = UView::of(b, Var::q2);
    if (sgn(ua.lc().eval(at)) == 0 || sgn(ub.lc().eval(at)) == 0) continue;
    UPoly sa = UPoly::from_mpoly(a.partial_eval(at));
    UPoly sb = UPoly::from_mpoly(b.partial_eval(at));
    if (res.eval(at) != sylvester_resultant(sa, sb)) fail(r, "bivariate resultant does not specialize");
  }
  return r;
}

PropertyResult check_discriminant_identities(std::uint64_t seed, unsigned trials) {
  PropertyResult r{"discriminant identities", true, 0, ""};
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t, ++r.trials) {
    UPoly f = random_upoly(rng, static_cast<unsigned>(uniform(rng, 2, 4)), 6);
    UPoly g = random_upoly(rng, static_cast<unsigned>(uniform(rng, 1, 3)), 6);
    int d = f.degree();
    Rat expect = resultant_of(f, f.derivative()) / f.lc();
    if ((d * (d - 1) / 2) % 2) expect = -expect;
    if (discriminant_of(f) != expect) fail(r, "disc(f) != (-1)^(d(d-1)/2) res(f, f') / lc(f)");
    Rat rfg = resultant_of(f, g);
    Rat dg = discriminant_of(g);
    if (discriminant_of(f * g) != discriminant_of(f) * dg * rfg * rfg) fail(r, "disc(fg) != disc(f) disc(g) res(f,g)^2");
    Rat a(uniform(rng, 1, 9));
    Rat x1(uniform(rng, -9, 9), 2);
    Rat x2(uniform(rng, -9, 9), 3);
    x1.canonicalize();
    x2.canonicalize();
    UPoly q = UPoly({a * x1 * x2, -a * (x1 + x2), a});
    if (discriminant_of(q) != a * a * (x1 - x2) * (x1 - x2)) fail(r, "disc(a(x-r)(x-s)) != a^2 (r-s)^2");
  }
  return r;
}

PropertyResult check_real_roots_oracle(std::uint64_t seed, unsigned trials) {
  PropertyResult r{"real roots vs numeric roots", true, 0, ""};
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    UPoly p({Rat(uniform(rng, 1, 5))});
    long k = uniform(rng, 0, 4);
    for (long i = 0; i < k; ++i) {
      Rat root(uniform(rng, -12, 12), uniform(rng, 1, 4));
      root.canonicalize();
      p = p * UPoly({-root, Rat(1)});
      if (uniform(rng, 0, 5) == 0 && p.degree() < 6) p = p * UPoly({-root, Rat(1)});  // repeated root
    }
    if (p.degree() <= 4) {
      long b = uniform(rng, -10, 10);
      long c = uniform(rng, -10, 10);
      if (b * b - 4 * c != 0) p = p * UPoly({Rat(c), Rat(b), Rat(1)});
    }
    if (p.degree() < 1) continue;
    ++r.trials;
    std::vector<double> coeffs;
    for (const auto& x : p.c) coeffs.push_back(x.get_d());
    auto zs = polynomial_roots(coeffs);
    // A root of multiplicity m scatters by about eps^(1/m); average each cluster.
    std::vector<std::complex<double>> centers;
    std::vector<bool> used(zs.size(), false);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (used[i]) continue;
      std::complex<double> sum = 0;
      int n = 0;
      for (std::size_t j = i; j < zs.size(); ++j) {
        if (!used[j] && std::abs(zs[j] - zs[i]) < 1e-2 * std::max(1.0, std::abs(zs[i]))) {
          used[j] = true;
          sum += zs[j];
          ++n;
        }
      }
      centers.push_back(sum / double(n));
    }
    std::vector<double> distinct;
    for (const auto& z : centers) {
      if (std::abs(z.imag()) < 1e-4 * std::max(1.0, std::abs(z))) distinct.push_back(z.real());
    }
    std::sort(distinct.begin(), distinct.end());
    auto exact = isolate_roots(p);
    if (exact.size() != distinct.size()) {
      std::ostringstream o;
      o << "degree " << p.degree() << ": " << exact.size() << " exact vs " << distinct.size() << " numeric roots";
      fail(r, o.str());
      continue;
    }
    for (std::size_t i = 0; i < exact.size(); ++i) {
      if (distinct[i] < exact[i].lo.get_d() - 1e-6 || distinct[i] > exact[i].hi.get_d() + 1e-6) {
        fail(r, "numeric root outside its isolating interval");
      }
    }
    UPoly q = random_upoly(rng, static_cast<unsigned>(uniform(rng, 1, 3)), 5);
    bool ambiguous = false;
    unsigned numeric_count = 0;
    for (double x : distinct) {
      double v = q.eval_double(x);
      if (std::abs(v) < 1e-6) ambiguous = true;
      if (v > 0) ++numeric_count;
    }
    if (!ambiguous && count_with_signs(p, {q}) != numeric_count) fail(r, "count_with_signs disagrees with numeric signs");
  }
  return r;
}

PropertyResult check_parser_round_trip(std::uint64_t seed, unsigned trials) {
  PropertyResult r{"parser round trip", true, 0, ""};
  Rng rng(seed);
  std::vector<Var> vars(kAllVars.begin(), kAllVars.end());
  for (unsigned t = 0; t < trials; ++t, ++r.trials) {
    MPoly p = random_poly(rng, vars, 4, 6);
    std::string text = print_canonical(p);
    if (!(parse_poly(text) == p)) fail(r, "round trip changed " + text);
    Rat x(uniform(rng, -1000, 1000), uniform(rng, 1, 1000));
    x.canonicalize();
    if (parse_rational(print_rat(x)) != x) fail(r, "rational round trip changed " + x.get_str());
  }
  return r;
}

PropertyResult check_zero_set_preservation(const ModelSpec& m, std::uint64_t seed, unsigned points) {
  PropertyResult r{"zero-set preservation " + m.name + " " + std::string(cost_name(m.cost)), true, 0, ""};
  Rng rng(seed);
  BiSystem sys = stability_system(m).equilibrium_system();
  Triangular tri = triangularize(sys);
  UniSAS u = substitute_ineqs(sys, tri);
  BorderData bd = border_polynomial(u);
  unsigned attempts = 0;
  while (r.trials < points && attempts++ < 10 * points) {
    Assignment a = random_params(rng, m);
    if (sgn(bd.SP.eval(a)) == 0) continue;
    ++r.trials;
    unsigned exact = count_solutions(u, a);

    // Exact side: each positive root of T, back-substituted.
    UPoly t = UPoly::from_mpoly(tri.T.to_mpoly().partial_eval(a));
    MPoly n = tri.N.partial_eval(a);
    MPoly d = tri.D.partial_eval(a);
    std::vector<State> symbolic;
    for (auto iv : isolate_roots(t, Range{Rat(0), std::nullopt})) {
      if (!iv.is_point()) iv = refine(t, iv, Rat(1, 1) / Rat(Int(1) << 100));
      Rat x = iv.mid();
      Assignment ax{{Var::q1, x}};
      Rat den = d.eval(ax);
      if (den == 0) continue;
      Rat q2 = n.eval(ax) / den;
      if (sgn(q2) > 0) symbolic.push_back({x.get_d(), q2.get_d()});
    }

    // Numeric side: multi-start Newton.
    double c1 = a.get(Var::c1).get_d();
    double c2 = a.get(Var::c2).get_d();
    State base = m.cost == CostKind::Quadratic ? ll_closed_form(c1, c2) : State{c2 / ((c1 + c2) * (c1 + c2)), c1 / ((c1 + c2) * (c1 + c2))};
    std::vector<State> found;
    for (int i = -4; i <= 4; ++i) {
      for (int j = -4; j <= 4; ++j) {
        auto q = solve_focs(m.cost, c1, c2, State{std::ldexp(base[0], i), std::ldexp(base[1], j)});
        if (!q) continue;
        bool seen = false;
        for (const auto& s : found) seen = seen || (close((*q)[0], s[0], 1e-8) && close((*q)[1], s[1], 1e-8));
        if (!seen) found.push_back(*q);
      }
    }
    std::sort(found.begin(), found.end());
    std::ostringstream where;
    where << " at c1=" << a.get(Var::c1).get_str() << " c2=" << a.get(Var::c2).get_str();
    if (found.size() != exact || symbolic.size() != exact) {
      std::ostringstream o;
      o << "exact count " << exact << ", numeric " << found.size() << ", back-substituted " << symbolic.size()
        << where.str();
      fail(r, o.str());
      continue;
    }
    for (std::size_t i = 0; i < exact; ++i) {
      if (!close(symbolic[i][0], found[i][0], 1e-9) || !close(symbolic[i][1], found[i][1], 1e-9)) {
        fail(r, "back substitution misses the numeric solution" + where.str());
      }
    }
  }
  return r;
}

PropertyResult check_scaling_invariance(const ModelSpec& m, std::uint64_t seed, unsigned points) {
  PropertyResult r{"scaling invariance " + m.name + " " + std::string(cost_name(m.cost)), true, 0, ""};
  Rng rng(seed);
  for (unsigned t = 0; t < points; ++t, ++r.trials) {
    Assignment a = random_params(rng, m);
    NumParams p = numeric(a, m);
    double s = random_positive(rng, 20).get_d();
    NumParams ps = p;
    ps[Var::c1] *= s;
    ps[Var::c2] *= s;
    auto e = find_equilibrium(m, p);
    auto es = find_equilibrium(m, ps);
    double expect = m.cost == CostKind::Quadratic ? 1 / std::sqrt(s) : 1 / s;
    if (!close(es.q1, e.q1 * expect, 1e-9) || !close(es.q2, e.q2 * expect, 1e-9)) fail(r, "equilibrium does not scale");
    auto j = jacobian_analytic(m, p, {e.q1, e.q2});
    auto js = jacobian_analytic(m, ps, {es.q1, es.q2});
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) {
        if (!close(js[i][k], j[i][k], 1e-8)) fail(r, "Jacobian entry changes under cost scaling");
      }
    }
  }
  // Every border factor is homogeneous in (c1, c2).
  BiSystem sys = stability_system(m).full_system();
  Triangular tri = triangularize(sys);
  BorderData bd = border_polynomial(substitute_ineqs(sys, tri));
  for (const auto& f : bd.sp_factors) {
    std::optional<unsigned> deg;
    for (const auto& term : f.terms()) {
      unsigned dc = term.mono[Var::c1] + term.mono[Var::c2];
      if (deg && *deg != dc) fail(r, "border factor not homogeneous in c1, c2: " + print_canonical(f));
      deg = dc;
    }
  }
  return r;
}

}  // namespace cournot
