#pragma once

// Randomized invariant checks shared by the unit tests and the acceptance
// suite. Every check is seeded and deterministic.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cournot/models.hpp"
#include "cournot/roots.hpp"

namespace cournot {

struct PropertyResult {
  std::string name;
  bool pass = true;
  unsigned trials = 0;
  std::string detail;  // first failure, if any
};

using Rng = std::mt19937_64;

// Random polynomial in vars with small integer coefficients.
MPoly random_poly(Rng& rng, const std::vector<Var>& vars, unsigned max_deg, unsigned max_terms);
UPoly random_upoly(Rng& rng, unsigned deg, long coef_range);
// Random positive rational with numerator and denominator in [1, n].
Rat random_positive(Rng& rng, long n);

// Determinant of the Sylvester matrix, by Gaussian elimination over Q.
Rat sylvester_resultant(const UPoly& a, const UPoly& b);

PropertyResult check_ring_axioms(std::uint64_t seed, unsigned trials = 100);
PropertyResult check_resultant_identities(std::uint64_t seed, unsigned trials = 60);
PropertyResult check_discriminant_identities(std::uint64_t seed, unsigned trials = 60);
PropertyResult check_real_roots_oracle(std::uint64_t seed, unsigned trials = 200);
PropertyResult check_parser_round_trip(std::uint64_t seed, unsigned trials = 200);
// Positive numeric solutions of the equilibrium system match the exact
// count, and N/D reproduces q2 to 1e-9.
PropertyResult check_zero_set_preservation(const ModelSpec& m, std::uint64_t seed, unsigned points = 20);
// (c1, c2) -> (s c1, s c2) leaves the Jacobian at the equilibrium unchanged
// and the border polynomial factors homogeneous.
PropertyResult check_scaling_invariance(const ModelSpec& m, std::uint64_t seed, unsigned points = 20);

}  // namespace cournot
