#include "cournot/ratfunc.hpp"

#include "cournot/algebra.hpp"

namespace cournot {

RatFunc::RatFunc(MPoly num, MPoly den) {
  if (den.is_zero()) throw ZeroPolynomial("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = MPoly();
    den_ = MPoly(1L);
    return;
  }
  MPoly g = gcd(num, den);
  if (!g.is_constant()) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  MPoly nd = normalized(den);
  // den = lambda * nd; rescale the numerator by the same lambda.
  Rat lambda = den.leading_coefficient() / nd.leading_coefficient();
  num_ = num * Rat(1 / lambda);
  den_ = std::move(nd);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw ZeroPolynomial("division by a zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::derivative(Var v) const {
  return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

RatFunc RatFunc::substitute(Var v, const MPoly& value) const {
  return RatFunc(num_.substitute(v, value), den_.substitute(v, value));
}

Rat RatFunc::eval(const Assignment& point) const {
  Rat d = den_.eval(point);
  if (sgn(d) == 0) throw ZeroPolynomial("denominator vanishes at the evaluation point");
  return num_.eval(point) / d;
}

double RatFunc::eval_double(const std::array<double, kVarCount>& point) const {
  return num_.eval_double(point) / den_.eval_double(point);
}

}  // namespace cournot
