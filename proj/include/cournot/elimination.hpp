#pragma once

// Reduction of a parametric system in (q1, q2) to one polynomial in q1 plus
// sign conditions, and its border polynomial.

#include <string>
#include <vector>

#include "cournot/poly.hpp"
#include "cournot/ratfunc.hpp"
#include "cournot/roots.hpp"

namespace cournot {

struct Inequality {
  RatFunc f;  // f > 0
  std::string label;
};

struct BiSystem {
  MPoly eqs[2];
  std::vector<Inequality> ineqs;
  // Implied by ineqs; contributes to the border polynomial only.
  std::vector<Inequality> border_only;
  std::vector<SignCondition> param_constraints;
};

struct Triangular {
  UView T;            // in q1, trivial q1^k factor removed
  unsigned removed;   // that k
  MPoly N;            // q2 = N / D
  MPoly D;
};

// A product of factors required to be > 0 (kept apart so resultants stay small).
struct CondPoly {
  std::vector<MPoly> factors;
  std::string label;

  MPoly product() const;
};

struct UniSAS {
  UView T;
  std::vector<CondPoly> conds;
  std::vector<MPoly> border_only;  // q1-polynomials whose sign is already known
  std::vector<SignCondition> param_constraints;
};

struct BorderData {
  MPoly A0;
  MPoly disc_T;
  MPoly res_T_dT;  // res(T, dT/dq1) = +-A0 * disc_T
  std::vector<MPoly> res_list;  // one per condition factor, then per border-only factor
  std::vector<MPoly> sp_factors;  // pairwise coprime, each squarefree
  MPoly SP;

  // A0 * res_T_dT * prod(res_list), as a factor list and expanded.
  std::vector<MPoly> bp_factors() const;
  MPoly BP() const;
};

Triangular triangularize(const BiSystem& sys);

// Sign-preserving polynomial image of p(q1, N/D): sum p_i N^i D^(k - i) with
// k = deg_q2 p rounded up to even.
MPoly clear_q2(const MPoly& p, const MPoly& N, const MPoly& D);

UniSAS substitute_ineqs(const BiSystem& sys, const Triangular& tri);

BorderData border_polynomial(const UniSAS& u);

// Denominators with only positive coefficients are positive wherever every
// variable is.
bool certified_positive(const MPoly& p);

// Distinct roots of the specialized T satisfying every condition.
unsigned count_solutions(const UniSAS& u, const Assignment& params);

}  // namespace cournot
