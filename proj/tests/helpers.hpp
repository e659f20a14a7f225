#pragma once

#include "cournot/expr.hpp"
#include "cournot/poly.hpp"
#include "cournot/roots.hpp"

namespace testing {

inline cournot::MPoly P(const char* text) { return cournot::parse_poly(text); }
inline cournot::Rat R(const char* text) { return cournot::parse_rational(text); }
inline cournot::UPoly U(const char* text) { return cournot::UPoly::from_mpoly(cournot::parse_poly(text)); }

}  // namespace testing
