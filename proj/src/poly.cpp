#include "cournot/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace cournot {

namespace {

constexpr std::array<std::string_view, kVarCount> kNames = {"q1", "q2", "c1", "c2", "K", "K1", "K2"};

bool greater(const Term& a, const Term& b) { return grlex(a.mono, b.mono) > 0; }

// Merges two descending term lists, b scaled by `sign`.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    auto cmp = grlex(a[i].mono, b[j].mono);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coef = -out.back().coef;
    } else {
      Rat c = sign > 0 ? Rat(a[i].coef + b[j].coef) : Rat(a[i].coef - b[j].coef);
      if (sgn(c) != 0) out.push_back(Term{a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (sign < 0) out.back().coef = -out.back().coef;
  }
  return out;
}

}  // namespace

std::string_view var_name(Var v) { return kNames[index(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (kNames[i] == name) return static_cast<Var>(i);
  }
  return std::nullopt;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (exp[i] > other.exp[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kVarCount; ++i) m.exp[i] = static_cast<std::uint16_t>(exp[i] + o.exp[i]);
  return m;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kVarCount; ++i) m.exp[i] = static_cast<std::uint16_t>(exp[i] - o.exp[i]);
  return m;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (auto c = a.exp[i] <=> b.exp[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exp) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

Assignment::Assignment(std::initializer_list<std::pair<Var, Rat>> values) {
  for (const auto& [v, r] : values) set(v, r);
}

Assignment& Assignment::set(Var v, Rat value) {
  values_[index(v)] = std::move(value);
  return *this;
}

const Rat& Assignment::get(Var v) const {
  if (!has(v)) throw MissingAssignment("no value assigned to " + std::string(var_name(v)));
  return *values_[index(v)];
}

MPoly::MPoly(const Rat& c) {
  if (sgn(c) != 0) terms_.push_back(Term{Monomial{}, c});
}

MPoly::MPoly(long c) : MPoly(Rat(c)) {}

MPoly MPoly::variable(Var v) { return monomial(Monomial::of(v), Rat(1)); }

MPoly MPoly::monomial(const Monomial& m, const Rat& c) {
  MPoly p;
  if (sgn(c) != 0) p.terms_.push_back(Term{m, c});
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
  return MPoly(std::move(out));
}

Rat MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_[0].coef;
}

Rat MPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return Rat(0);
}

unsigned MPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[v]);
  return d;
}

unsigned MPoly::min_degree(Var v) const {
  if (terms_.empty()) return 0;
  unsigned d = terms_[0].mono[v];
  for (const auto& t : terms_) d = std::min(d, t.mono[v]);
  return d;
}

unsigned MPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

VarMask MPoly::variables() const {
  VarMask mask = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (t.mono.exp[i] != 0) mask = static_cast<VarMask>(mask | (1u << i));
    }
  }
  return mask;
}

MPoly MPoly::operator-() const {
  MPoly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.is_zero()) return *this;
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.is_zero()) return *this;
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly& MPoly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coef *= c;
  }
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coef);
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coef);
  std::unordered_map<Monomial, Rat, MonomialHash> acc;
  acc.reserve(a.size() * b.size() / 2 + 16);
  Rat prod;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      mpq_mul(prod.get_mpq_t(), ta.coef.get_mpq_t(), tb.coef.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono);
      if (inserted) {
        it->second = prod;
      } else {
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
      }
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (sgn(c) != 0) out.push_back(Term{m, std::move(c)});
  }
  std::sort(out.begin(), out.end(), greater);
  return MPoly(std::move(out));
}

MPoly MPoly::pow(unsigned n) const {
  MPoly result(1L);
  MPoly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Rat& c) const {
  if (sgn(c) == 0) return MPoly();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{t.mono * m, t.coef * c});
  return MPoly(std::move(out));
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

Rat MPoly::eval(const Assignment& point) const {
  VarMask vars = variables();
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (((vars >> i) & 1u) && !point.has(static_cast<Var>(i))) {
      throw MissingAssignment("no value assigned to " + std::string(var_name(static_cast<Var>(i))));
    }
  }
  // Cache powers per variable.
  std::array<std::vector<Rat>, kVarCount> powers;
  Rat sum(0);
  Rat term;
  for (const auto& t : terms_) {
    term = t.coef;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      unsigned e = t.mono.exp[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Rat(1));
      while (pw.size() <= e) pw.push_back(pw.back() * point.get(static_cast<Var>(i)));
      term *= pw[e];
    }
    sum += term;
  }
  return sum;
}

double MPoly::eval_double(const std::array<double, kVarCount>& point) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double term = t.coef.get_d();
    for (std::size_t i = 0; i < kVarCount; ++i) {
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

MPoly MPoly::partial_eval(const Assignment& point) const {
  std::array<std::vector<Rat>, kVarCount> powers;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term nt{t.mono, t.coef};
    for (std::size_t i = 0; i < kVarCount; ++i) {
      Var v = static_cast<Var>(i);
      unsigned e = t.mono.exp[i];
      if (e == 0 || !point.has(v)) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Rat(1));
      while (pw.size() <= e) pw.push_back(pw.back() * point.get(v));
      nt.coef *= pw[e];
      nt.mono.exp[i] = 0;
    }
    out.push_back(std::move(nt));
  }
  return from_terms(std::move(out));
}

MPoly MPoly::substitute(Var v, const MPoly& value) const {
  UView u = UView::of(*this, v);
  MPoly acc;
  for (int i = u.degree(); i >= 0; --i) {
    acc = acc * value + u.coeffs[static_cast<std::size_t>(i)];
  }
  return acc;
}

MPoly MPoly::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono[v];
    if (e == 0) continue;
    Term nt{t.mono, t.coef * Rat(e)};
    nt.mono.exp[index(v)] = static_cast<std::uint16_t>(e - 1);
    out.push_back(std::move(nt));
  }
  // Lowering one exponent can reorder terms under grlex.
  return from_terms(std::move(out));
}

MPoly derivative(const MPoly& p, Var v) { return p.derivative(v); }

Rat eval(const MPoly& p, const Assignment& point) { return p.eval(point); }

MPoly arith(const MPoly& a, const MPoly& b, RingOp op) {
  switch (op) {
    case RingOp::add:
      return a + b;
    case RingOp::sub:
      return a - b;
    case RingOp::mul:
      return a * b;
  }
  return MPoly();
}

UView UView::of(const MPoly& p, Var main) {
  UView u;
  u.main = main;
  if (p.is_zero()) return u;
  std::vector<std::vector<Term>> buckets(p.degree(main) + 1);
  for (const auto& t : p.terms()) {
    Term nt = t;
    unsigned e = nt.mono[main];
    nt.mono.exp[index(main)] = 0;
    buckets[e].push_back(std::move(nt));
  }
  u.coeffs.reserve(buckets.size());
  for (auto& b : buckets) u.coeffs.push_back(MPoly::from_terms(std::move(b)));
  u.trim();
  return u;
}

UView UView::from_coeffs(Var main, std::vector<MPoly> coeffs) {
  UView u{main, std::move(coeffs)};
  u.trim();
  return u;
}

MPoly UView::to_mpoly() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (const auto& t : coeffs[i].terms()) {
      Term nt = t;
      nt.mono.exp[index(main)] = static_cast<std::uint16_t>(nt.mono.exp[index(main)] + i);
      out.push_back(std::move(nt));
    }
  }
  return MPoly::from_terms(std::move(out));
}

void UView::trim() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

}  // namespace cournot
