#pragma once

#include "cournot/poly.hpp"

namespace cournot {

// num/den with gcd(num, den) = 1 and den normalized (integer primitive,
// positive leading coefficient).
class RatFunc {
 public:
  RatFunc() : num_(), den_(1L) {}
  RatFunc(MPoly p) : num_(std::move(p)), den_(1L) {}  // NOLINT(google-explicit-constructor)
  RatFunc(MPoly num, MPoly den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc derivative(Var v) const;
  RatFunc substitute(Var v, const MPoly& value) const;
  Rat eval(const Assignment& point) const;
  double eval_double(const std::array<double, kVarCount>& point) const;

 private:
  MPoly num_;
  MPoly den_;
};

}  // namespace cournot
