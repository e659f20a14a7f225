#pragma once

// The nine duopoly games with isoelastic demand p = 1/(q1 + q2).
// Player letters: L = local monopolistic approximation, B = boundedly
// rational (best response to the rival's last output), A = adaptive,
// R = rational (player 2 responds to q1(t+1)).

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "cournot/elimination.hpp"
#include "cournot/ratfunc.hpp"

namespace cournot {

enum class PlayerKind { Rational, BoundedlyRational, LMA, Adaptive };
enum class CostKind { Quadratic, Linear };
enum class Timing { Simultaneous, Sequential };

struct ModelSpec {
  std::string name;
  std::array<PlayerKind, 2> players;
  CostKind cost = CostKind::Quadratic;
  Timing timing = Timing::Simultaneous;
  std::array<Var, 2> speed{Var::K, Var::K};  // meaningful for adaptive players

  bool one_dimensional() const { return timing == Timing::Sequential; }
  // Parameters in alphabet order: c1, c2, then speeds.
  std::vector<Var> params() const;
};

inline constexpr std::array<std::string_view, 9> kModelNames = {"LL", "LB", "BB", "BR", "LR",
                                                                 "AR", "AB", "AL", "AA"};

ModelSpec model_from_name(std::string_view name, CostKind cost = CostKind::Quadratic);
CostKind cost_from_name(std::string_view name);
std::string_view cost_name(CostKind cost);

Var own_q(int i);
Var rival_q(int i);
Var cost_param(int i);

// Quadratic: q_{-i} - 2 c_i q_i (q_i + q_{-i})^2. Linear: q_{-i} - c_i (q_i + q_{-i})^2.
MPoly foc_polynomial(CostKind cost, int i);

// Quadratic: (2 q_i + q_{-i}) / (2 (1 + c_i Q^2)). Linear: (2 q_i + q_{-i} - c_i Q^2) / 2.
RatFunc lma_response(CostKind cost, int i);

// dq_own/dq_rival along foc = 0.
RatFunc implicit_derivative(const MPoly& foc, Var own, Var rival);

struct StabilitySystem {
  MPoly eqs[2];
  std::vector<Inequality> positivity;
  std::vector<Inequality> jury;
  std::vector<Inequality> border_only;  // 1 + Det for planar maps
  std::vector<SignCondition> params;
  std::array<std::array<RatFunc, 2>, 2> jacobian;  // planar maps
  RatFunc derivative;                              // 1-D reductions

  BiSystem equilibrium_system() const;
  BiSystem full_system() const;
};

StabilitySystem stability_system(const ModelSpec& m);

// Unique positive root of the FOC in q_i for rival output y.
double best_response_numeric(CostKind cost, double c, double y);
// The LMA response evaluated in floating point.
double lma_numeric(CostKind cost, double c, double own, double rival);

}  // namespace cournot
