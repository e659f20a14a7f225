#include "cournot/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace cournot {

namespace {

struct Descending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex(a, b) > 0; }
};

bool is_unit(const MPoly& p) { return p.is_constant() && !p.is_zero(); }

MPoly var_power(Var v, unsigned e) { return MPoly::monomial(Monomial::of(v, e), Rat(1)); }

std::optional<Var> first_variable(VarMask mask) {
  for (auto v : kAllVars) {
    if ((mask >> index(v)) & 1u) return v;
  }
  return std::nullopt;
}

Monomial min_monomial(const MPoly& p) {
  Monomial m;
  for (auto v : kAllVars) m.exp[index(v)] = static_cast<std::uint16_t>(p.min_degree(v));
  return m;
}

Int int_content(const MPoly& p) {
  Int g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Int max_norm(const MPoly& p) {
  Int m = 0;
  for (const auto& t : p.terms()) {
    Int a = abs(t.coef.get_num());
    if (a > m) m = a;
  }
  return m;
}

MPoly scale_int(const MPoly& p, const Int& c) { return p * Rat(c); }

MPoly divide_int(const MPoly& p, const Int& c) { return p * Rat(Int(1), c); }

// Symmetric residues of the integer coefficients modulo x.
MPoly symmetric_mod(const MPoly& p, const Int& x) {
  std::vector<Term> out;
  Int half = x / 2;
  for (const auto& t : p.terms()) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), t.coef.get_num_mpz_t(), x.get_mpz_t());
    if (r > half) r -= x;
    if (r != 0) out.push_back(Term{t.mono, Rat(r)});
  }
  return MPoly::from_terms(std::move(out));
}

// Recovers a polynomial in v from its image at v = x (x-adic expansion).
MPoly interpolate(MPoly h, const Int& x, Var v) {
  MPoly out;
  unsigned i = 0;
  while (!h.is_zero()) {
    MPoly g = symmetric_mod(h, x);
    out += g * var_power(v, i);
    h = divide_int(h - g, x);
    ++i;
  }
  if (!out.is_zero() && sgn(out.leading_coefficient()) < 0) out = -out;
  return out;
}

MPoly int_primitive(const MPoly& p) {
  if (p.is_zero()) return p;
  Int c = int_content(p);
  return divide_int(p, c);
}

struct HeuResult {
  MPoly h, cff, cfg;
};

// Heuristic gcd (evaluation at a large integer and x-adic reconstruction) for
// polynomials with integer coefficients. Both inputs nonzero.
std::optional<HeuResult> heu_gcd(const MPoly& f0, const MPoly& g0) {
  if (f0.is_constant() || g0.is_constant()) {
    Int a = int_content(f0);
    Int b = int_content(g0);
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return HeuResult{MPoly(Rat(g)), divide_int(f0, g), divide_int(g0, g)};
  }
  auto v = *first_variable(static_cast<VarMask>(f0.variables() | g0.variables()));
  Int cf = int_content(f0);
  Int cg = int_content(g0);
  Int common;
  mpz_gcd(common.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  MPoly f = divide_int(f0, cf);
  MPoly g = divide_int(g0, cg);

  Int fn = max_norm(f);
  Int gn = max_norm(g);
  Int b = 2 * std::min(fn, gn) + 29;
  Int root = sqrt(b);
  Int x = std::min(b, Int(99 * root));
  Int lf = abs(f.leading_coefficient().get_num());
  Int lg = abs(g.leading_coefficient().get_num());
  Int alt = 2 * std::min(Int(fn / lf), Int(gn / lg)) + 4;
  x = std::max(x, alt);

  for (int attempt = 0; attempt < 6; ++attempt) {
    Assignment at;
    at.set(v, Rat(x));
    MPoly ff = f.partial_eval(at);
    MPoly gg = g.partial_eval(at);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto sub = heu_gcd(ff, gg);
      if (!sub) return std::nullopt;
      MPoly h = int_primitive(interpolate(sub->h, x, v));
      if (!h.is_zero()) {
        if (auto qf = try_div(f, h)) {
          if (auto qg = try_div(g, h)) {
            return HeuResult{scale_int(h, common), scale_int(*qf, cf / common), scale_int(*qg, cg / common)};
          }
        }
      }
      MPoly cff = interpolate(sub->cff, x, v);
      if (!cff.is_zero()) {
        if (auto hh = try_div(f, cff)) {
          MPoly prim = int_primitive(*hh);
          if (auto qf = try_div(f, prim)) {
            if (auto qg = try_div(g, prim)) {
              return HeuResult{scale_int(prim, common), scale_int(*qf, cf / common), scale_int(*qg, cg / common)};
            }
          }
        }
      }
      MPoly cfg = interpolate(sub->cfg, x, v);
      if (!cfg.is_zero()) {
        if (auto hh = try_div(g, cfg)) {
          MPoly prim = int_primitive(*hh);
          if (auto qf = try_div(f, prim)) {
            if (auto qg = try_div(g, prim)) {
              return HeuResult{scale_int(prim, common), scale_int(*qf, cf / common), scale_int(*qg, cg / common)};
            }
          }
        }
      }
    }
    Int s = sqrt(sqrt(x));
    x = 73794 * x * s / 27011;
  }
  return std::nullopt;
}

MPoly prs_gcd(const MPoly& a, const MPoly& b);

MPoly gcd_nonzero(const MPoly& a, const MPoly& b) {
  if (a.is_constant() || b.is_constant()) return MPoly(1L);
  Monomial ma = min_monomial(a);
  Monomial mb = min_monomial(b);
  Monomial common;
  for (std::size_t i = 0; i < kVarCount; ++i) common.exp[i] = std::min(ma.exp[i], mb.exp[i]);
  MPoly aa = normalized(a);
  MPoly bb = normalized(b);
  if (!ma.is_one()) aa = *try_div(aa, MPoly::monomial(ma, Rat(1)));
  if (!mb.is_one()) bb = *try_div(bb, MPoly::monomial(mb, Rat(1)));
  MPoly mono = MPoly::monomial(common, Rat(1));
  if (aa.is_constant() || bb.is_constant()) return mono;
  if (aa == bb) return mono * aa;
  if (auto h = heu_gcd(aa, bb)) return normalized(mono * h->h);
  return normalized(mono * prs_gcd(aa, bb));
}

MPoly prs_gcd(const MPoly& a, const MPoly& b) {
  if (a.is_constant() || b.is_constant()) return MPoly(1L);
  auto v = *first_variable(static_cast<VarMask>(a.variables() | b.variables()));
  if (!a.involves(v)) return gcd(a, content(UView::of(b, v)));
  if (!b.involves(v)) return gcd(content(UView::of(a, v)), b);
  UView ua = UView::of(a, v);
  UView ub = UView::of(b, v);
  MPoly ca = content(ua);
  MPoly cb = content(ub);
  MPoly g = gcd(ca, cb);
  UView pa = UView::of(exact_div(a, ca), v);
  UView pb = UView::of(exact_div(b, cb), v);
  auto chain = subresultant_prs(pa, pb);
  const UView& last = chain.polys.back();
  MPoly p = last.degree() <= 0 ? MPoly(1L) : primitive_part(last).to_mpoly();
  return normalized(g * p);
}

UView scale(const UView& u, const MPoly& c) {
  UView out = u;
  for (auto& x : out.coeffs) x = x * c;
  out.trim();
  return out;
}

UView divide(const UView& u, const MPoly& c) {
  UView out = u;
  for (auto& x : out.coeffs) x = exact_div(x, c);
  return out;
}

}  // namespace

std::optional<MPoly> try_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (a.is_zero()) return MPoly();
  if (b.is_constant()) return a * Rat(1 / b.constant_value());
  for (auto v : kAllVars) {
    if (b.degree(v) > a.degree(v)) return std::nullopt;
  }
  const Term& lt = b.leading_term();
  Rat inv = 1 / lt.coef;
  if (b.size() == 1) {
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!lt.mono.divides(t.mono)) return std::nullopt;
      out.push_back(Term{t.mono / lt.mono, t.coef * inv});
    }
    return MPoly::from_terms(std::move(out));
  }
  std::map<Monomial, Rat, Descending> rem;
  for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.mono, t.coef);
  std::vector<Term> quot;
  Rat prod;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lt.mono.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lt.mono;
    Rat qc = it->second * inv;
    rem.erase(it);
    for (std::size_t i = 1; i < b.terms().size(); ++i) {
      const Term& t = b.terms()[i];
      mpq_mul(prod.get_mpq_t(), qc.get_mpq_t(), t.coef.get_mpq_t());
      auto [pos, inserted] = rem.try_emplace(qm * t.mono);
      if (inserted) {
        pos->second = -prod;
      } else {
        pos->second -= prod;
        if (sgn(pos->second) == 0) rem.erase(pos);
      }
    }
    quot.push_back(Term{qm, std::move(qc)});
  }
  return MPoly::from_terms(std::move(quot));
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  auto q = try_div(a, b);
  if (!q) throw InexactDivision("polynomial division is not exact");
  return *q;
}

UView prem(const UView& f, const UView& g) {
  if (g.is_zero()) throw ZeroPolynomial("pseudo-remainder by zero");
  int m = g.degree();
  UView r = f;
  if (r.degree() < m) return r;
  int n = r.degree() - m + 1;
  const MPoly& lcg = g.lc();
  while (!r.is_zero() && r.degree() >= m) {
    int j = r.degree() - m;
    MPoly lr = r.lc();
    for (auto& c : r.coeffs) c = c * lcg;
    for (int i = 0; i <= m; ++i) {
      r.coeffs[static_cast<std::size_t>(i + j)] -= lr * g.coeffs[static_cast<std::size_t>(i)];
    }
    r.trim();
    --n;
  }
  if (n > 0) r = scale(r, lcg.pow(static_cast<unsigned>(n)));
  return r;
}

SubresultantChain subresultant_prs(const UView& f0, const UView& g0) {
  SubresultantChain out;
  UView f = f0;
  UView g = g0;
  if (f.degree() < g.degree()) {
    std::swap(f, g);
    out.swapped = true;
  }
  if (f.is_zero()) return out;
  if (g.is_zero()) {
    out.polys = {f};
    out.scalars = {MPoly(1L)};
    return out;
  }
  out.polys = {f, g};
  int m = g.degree();
  int d = f.degree() - m;
  UView h = prem(f, g);
  if ((d + 1) % 2 != 0) {
    for (auto& c : h.coeffs) c = -c;
  }
  MPoly lc = g.lc();
  MPoly c = lc.pow(static_cast<unsigned>(d));
  out.scalars = {MPoly(1L), c};
  c = -c;
  while (!h.is_zero()) {
    int k = h.degree();
    out.polys.push_back(h);
    f = g;
    g = h;
    d = m - k;
    m = k;
    MPoly b = -(lc * c.pow(static_cast<unsigned>(d)));
    h = divide(prem(f, g), b);
    lc = g.lc();
    if (d > 1) {
      MPoly q = c.pow(static_cast<unsigned>(d - 1));
      c = exact_div((-lc).pow(static_cast<unsigned>(d)), q);
    } else {
      c = -lc;
    }
    out.scalars.push_back(-c);
  }
  return out;
}

MPoly resultant(const UView& a, const UView& b) {
  if (a.is_zero() || b.is_zero()) throw ZeroPolynomial("resultant of the zero polynomial");
  auto chain = subresultant_prs(a, b);
  if (chain.polys.back().degree() > 0) return MPoly();
  MPoly r = chain.scalars.back();
  if (chain.swapped && (a.degree() * b.degree()) % 2 != 0) r = -r;
  return r;
}

MPoly resultant(const MPoly& a, const MPoly& b, Var v) { return resultant(UView::of(a, v), UView::of(b, v)); }

MPoly discriminant(const UView& p) {
  int d = p.degree();
  if (d < 1) throw DegreeZero("discriminant needs degree at least 1");
  UView dp = UView::of(p.to_mpoly().derivative(p.main), p.main);
  MPoly r = resultant(p, dp);
  if ((d * (d - 1) / 2) % 2 != 0) r = -r;
  return exact_div(r, p.lc());
}

MPoly discriminant(const MPoly& p, Var v) { return discriminant(UView::of(p, v)); }

MPoly normalized(const MPoly& p) {
  if (p.is_zero()) return p;
  Int den = 1;
  Int num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coef.get_num_mpz_t());
  }
  Rat f(den, num);
  if (sgn(p.leading_coefficient()) < 0) f = -f;
  if (f == 1) return p;
  return p * f;
}

MPoly positive_primitive(const MPoly& p) {
  MPoly n = normalized(p);
  if (!p.is_zero() && sgn(p.leading_coefficient()) < 0) n = -n;
  return n;
}

bool equal_up_to_constant(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return normalized(a) == normalized(b);
}

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  return gcd_nonzero(a, b);
}

UView gcd(const UView& a, const UView& b) { return UView::of(gcd(a.to_mpoly(), b.to_mpoly()), a.main); }

MPoly content(const UView& u) {
  MPoly g;
  for (const auto& c : u.coeffs) {
    g = gcd(g, c);
    if (is_unit(g)) return MPoly(1L);
  }
  return g;
}

UView primitive_part(const UView& u) {
  if (u.is_zero()) return u;
  return divide(u, content(u));
}

MPoly squarefree_part(const MPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("squarefree part of the zero polynomial");
  MPoly q = normalized(p);
  Monomial m = min_monomial(q);
  MPoly vars(1L);
  for (auto v : kAllVars) {
    if (m[v] > 0) vars = vars * MPoly::variable(v);
  }
  if (!m.is_one()) q = exact_div(q, MPoly::monomial(m, Rat(1)));
  std::function<MPoly(const MPoly&)> rec = [&](const MPoly& r) -> MPoly {
    if (r.is_constant()) return MPoly(1L);
    auto v = *first_variable(r.variables());
    MPoly c = content(UView::of(r, v));
    MPoly pp = exact_div(r, c);
    MPoly g = gcd(pp, pp.derivative(v));
    return exact_div(pp, g) * rec(c);
  };
  return normalized(vars * rec(q));
}

std::vector<MPoly> coprime_squarefree_basis(const std::vector<MPoly>& polys) {
  std::vector<MPoly> basis;
  for (const auto& p : polys) {
    if (p.is_constant()) continue;
    MPoly s = squarefree_part(p);
    std::vector<MPoly> next;
    for (auto& b : basis) {
      if (s.is_constant()) {
        next.push_back(b);
        continue;
      }
      MPoly h = gcd(s, b);
      if (h.is_constant()) {
        next.push_back(b);
        continue;
      }
      MPoly rest = exact_div(b, h);
      if (!rest.is_constant()) next.push_back(normalized(rest));
      next.push_back(h);
      s = exact_div(s, h);
    }
    if (!s.is_constant()) next.push_back(normalized(s));
    basis = std::move(next);
  }
  std::sort(basis.begin(), basis.end(), [](const MPoly& a, const MPoly& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto c = grlex(a.terms()[i].mono, b.terms()[i].mono);
      if (c != 0) return c < 0;
      if (a.terms()[i].coef != b.terms()[i].coef) return a.terms()[i].coef < b.terms()[i].coef;
    }
    return false;
  });
  return basis;
}

}  // namespace cournot
