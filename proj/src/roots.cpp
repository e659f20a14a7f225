#include "cournot/roots.hpp"

#include <algorithm>

#include "cournot/errors.hpp"

namespace cournot {

namespace {

std::optional<Var> only_variable(const MPoly& p) {
  std::optional<Var> found;
  for (auto v : kAllVars) {
    if (!p.involves(v)) continue;
    if (found) throw Error("expected a univariate polynomial");
    found = v;
  }
  return found;
}

class Sturm {
 public:
  explicit Sturm(const UPoly& p) {
    seq_.push_back(primitive_positive(p));
    if (p.degree() < 1) return;
    seq_.push_back(primitive_positive(p.derivative()));
    while (seq_.back().degree() > 0) {
      UPoly r = rem(seq_[seq_.size() - 2], seq_.back());
      if (r.is_zero()) break;
      for (auto& x : r.c) x = -x;
      seq_.push_back(primitive_positive(r));
    }
  }

  int variations_at(const Rat& x) const {
    std::vector<int> s;
    s.reserve(seq_.size());
    for (const auto& q : seq_) s.push_back(q.sign_at(x));
    return count(s);
  }

  int variations_at_infinity(bool positive) const {
    std::vector<int> s;
    s.reserve(seq_.size());
    for (const auto& q : seq_) {
      int sg = sgn(q.lc());
      if (!positive && q.degree() % 2 != 0) sg = -sg;
      s.push_back(sg);
    }
    return count(s);
  }

 private:
  static int count(const std::vector<int>& s) {
    int v = 0;
    int last = 0;
    for (int x : s) {
      if (x == 0) continue;
      if (last != 0 && x != last) ++v;
      last = x;
    }
    return v;
  }

  std::vector<UPoly> seq_;
};

// Distinct roots of the squarefree p in (lo, hi] via V(lo) - V(hi).
unsigned count_open(const Sturm& s, const UPoly& p, const Range& r) {
  int vlo = r.lo ? s.variations_at(*r.lo) : s.variations_at_infinity(false);
  int vhi = r.hi ? s.variations_at(*r.hi) : s.variations_at_infinity(true);
  int n = vlo - vhi;
  if (r.hi && p.sign_at(*r.hi) == 0) --n;
  return static_cast<unsigned>(std::max(n, 0));
}

struct Isolator {
  const UPoly& p;
  Sturm sturm;
  std::vector<Interval> out;

  explicit Isolator(const UPoly& sqf) : p(sqf), sturm(sqf) {}

  unsigned count(const Rat& lo, const Rat& hi) const { return count_open(sturm, p, Range{lo, hi}); }

  // Shrinks toward a root at `x` until the strip between x and the new
  // endpoint holds no root; returns the endpoint.
  Rat clear_of(const Rat& x, const Rat& away) const {
    Rat step = (away - x) / 2;
    for (;;) {
      Rat e = x + step;
      if (p.sign_at(e) != 0) {
        Range strip = sgn(step) > 0 ? Range{x, e} : Range{e, x};
        if (count_open(sturm, p, strip) == 0) return e;
      }
      step /= 2;
    }
  }

  // (lo, hi) holds n roots, with lo and hi non-roots.
  void run(const Rat& lo, const Rat& hi, unsigned n) {
    if (n == 0) return;
    if (n == 1) {
      out.push_back(Interval{lo, hi, Interval::Kind::open});
      return;
    }
    Rat mid = (lo + hi) / 2;
    if (p.sign_at(mid) != 0) {
      unsigned left = count(lo, mid);
      run(lo, mid, left);
      run(mid, hi, n - left);
      return;
    }
    Rat a = clear_of(mid, lo);
    Rat b = clear_of(mid, hi);
    unsigned left = count(lo, a);
    run(lo, a, left);
    out.push_back(Interval::point(mid));
    run(b, hi, n - left - 1);
  }
};

Interval exact_linear(const UPoly& p) { return Interval::point(-p.c[0] / p.c[1]); }

}  // namespace

UPoly::UPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

UPoly UPoly::from_mpoly(const MPoly& p) {
  auto v = only_variable(p);
  UPoly u;
  if (p.is_zero()) return u;
  if (!v) {
    u.c = {p.constant_value()};
    return u;
  }
  u.c.assign(p.degree(*v) + 1, Rat(0));
  for (const auto& t : p.terms()) u.c[t.mono[*v]] = t.coef;
  u.trim();
  return u;
}

MPoly UPoly::to_mpoly(Var v) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) != 0) terms.push_back(Term{Monomial::of(v, static_cast<unsigned>(i)), c[i]});
  }
  return MPoly::from_terms(std::move(terms));
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double UPoly::eval_double(double x) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

UPoly UPoly::derivative() const {
  UPoly d;
  for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rat(static_cast<long>(i)));
  d.trim();
  return d;
}

void UPoly::trim() {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> out(a.c.size() + b.c.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
  }
  return UPoly(std::move(out));
}

namespace {

void divmod(const UPoly& a, const UPoly& b, UPoly* q, UPoly* r) {
  if (b.is_zero()) throw ZeroPolynomial("univariate division by zero");
  UPoly rr = a;
  std::vector<Rat> qq(a.degree() >= b.degree() ? static_cast<std::size_t>(a.degree() - b.degree() + 1) : 0,
                      Rat(0));
  Rat inv = 1 / b.lc();
  while (!rr.is_zero() && rr.degree() >= b.degree()) {
    int shift = rr.degree() - b.degree();
    Rat f = rr.lc() * inv;
    qq[static_cast<std::size_t>(shift)] = f;
    for (int i = 0; i <= b.degree(); ++i) {
      rr.c[static_cast<std::size_t>(i + shift)] -= f * b.c[static_cast<std::size_t>(i)];
    }
    rr.c.pop_back();
    rr.trim();
  }
  if (q) *q = UPoly(std::move(qq));
  if (r) *r = std::move(rr);
}

}  // namespace

UPoly rem(const UPoly& a, const UPoly& b) {
  UPoly r;
  divmod(a, b, nullptr, &r);
  return r;
}

UPoly quo(const UPoly& a, const UPoly& b) {
  UPoly q;
  divmod(a, b, &q, nullptr);
  return q;
}

UPoly gcd(const UPoly& a0, const UPoly& b0) {
  UPoly a = a0;
  UPoly b = b0;
  while (!b.is_zero()) {
    UPoly r = rem(a, b);
    a = std::move(b);
    b = primitive_positive(r);
  }
  if (a.is_zero()) return a;
  Rat inv = 1 / a.lc();
  for (auto& x : a.c) x *= inv;
  return a;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("squarefree part of the zero polynomial");
  if (p.degree() < 2) return primitive_positive(p);
  return primitive_positive(quo(p, gcd(p, p.derivative())));
}

UPoly primitive_positive(const UPoly& p) {
  if (p.is_zero()) return p;
  Int den = 1;
  Int num = 0;
  for (const auto& x : p.c) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
  }
  Rat f(den, num);
  f.canonicalize();
  UPoly out = p;
  for (auto& x : out.c) x *= f;
  return out;
}

unsigned sturm_count(const UPoly& p, const Range& range) {
  if (p.is_zero()) throw ZeroPolynomial("root count of the zero polynomial");
  UPoly s = squarefree_part(p);
  if (s.degree() < 1) return 0;
  return count_open(Sturm(s), s, range);
}

unsigned sturm_count(const MPoly& p, const Range& range) { return sturm_count(UPoly::from_mpoly(p), range); }

Rat cauchy_bound(const UPoly& p) {
  Rat m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rat r = abs(p.c[static_cast<std::size_t>(i)] / p.lc());
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<Interval> isolate_roots(const UPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("root isolation of the zero polynomial");
  UPoly s = squarefree_part(p);
  if (s.degree() < 1) return {};
  if (s.degree() == 1) return {exact_linear(s)};
  Rat b = cauchy_bound(s);
  Isolator iso(s);
  iso.run(-b, b, iso.count(-b, b));
  return iso.out;
}

std::vector<Interval> isolate_roots(const MPoly& p) { return isolate_roots(UPoly::from_mpoly(p)); }

std::vector<Interval> isolate_roots(const UPoly& p, const Range& range) {
  if (p.is_zero()) throw ZeroPolynomial("root isolation of the zero polynomial");
  UPoly s = squarefree_part(p);
  if (s.degree() < 1) return {};
  Rat b = cauchy_bound(s);
  Rat lo = range.lo ? *range.lo : -b;
  Rat hi = range.hi ? *range.hi : b;
  if (lo >= hi) return {};
  if (s.degree() == 1) {
    Interval iv = exact_linear(s);
    if (iv.lo > lo && iv.lo < hi) return {iv};
    return {};
  }
  Isolator iso(s);
  // Endpoints of the range may be roots; step inside them first.
  Rat a = lo;
  Rat z = hi;
  if (s.sign_at(a) == 0) a = iso.clear_of(lo, hi);
  if (s.sign_at(z) == 0) z = iso.clear_of(hi, lo);
  iso.run(a, z, iso.count(a, z));
  return iso.out;
}

Interval refine(const UPoly& p, const Interval& iv, const Rat& width) {
  if (iv.is_point()) return iv;
  UPoly s = squarefree_part(p);
  Interval cur = iv;
  int slo = s.sign_at(cur.lo);
  while (cur.hi - cur.lo >= width) {
    Rat mid = cur.mid();
    int sm = s.sign_at(mid);
    if (sm == 0) return Interval::point(mid);
    if (sm == slo) {
      cur.lo = mid;
    } else {
      cur.hi = mid;
    }
  }
  return cur;
}

Interval refine(const MPoly& p, const Interval& iv, const Rat& width) {
  return refine(UPoly::from_mpoly(p), iv, width);
}

int sign_at_root(const UPoly& p, Interval& iv, const UPoly& q) {
  if (q.is_zero()) return 0;
  if (iv.is_point()) return q.sign_at(iv.lo);
  UPoly g = gcd(p, q);
  if (g.degree() >= 1 && g.sign_at(iv.lo) * g.sign_at(iv.hi) < 0) return 0;
  UPoly qs = squarefree_part(q);
  for (;;) {
    if (qs.degree() < 1) return sgn(q.lc());
    int a = qs.sign_at(iv.lo);
    int b = qs.sign_at(iv.hi);
    if (a != 0 && b != 0 && count_open(Sturm(qs), qs, Range{iv.lo, iv.hi}) == 0) return q.sign_at(iv.lo);
    iv = refine(p, iv, (iv.hi - iv.lo) / 2);
    if (iv.is_point()) return q.sign_at(iv.lo);
  }
}

unsigned count_with_signs(const UPoly& T, const std::vector<UPoly>& conds) {
  if (T.is_zero()) throw ZeroPolynomial("counting roots of the zero polynomial");
  UPoly s = squarefree_part(T);
  if (s.degree() < 1) return 0;
  std::vector<UPoly> reduced;
  reduced.reserve(conds.size());
  for (const auto& q : conds) reduced.push_back(rem(q, s));
  unsigned n = 0;
  for (auto iv : isolate_roots(s)) {
    bool ok = true;
    for (const auto& r : reduced) {
      if (sign_at_root(s, iv, r) <= 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++n;
  }
  return n;
}

unsigned count_with_signs(const MPoly& T, const std::vector<SignCondition>& conds) {
  std::vector<UPoly> cs;
  cs.reserve(conds.size());
  for (const auto& c : conds) cs.push_back(UPoly::from_mpoly(c.poly));
  return count_with_signs(UPoly::from_mpoly(T), cs);
}

}  // namespace cournot
