#include "cournot/models.hpp"

#include <algorithm>
#include <cmath>

#include "cournot/errors.hpp"

namespace cournot {

namespace {

MPoly var(Var v) { return MPoly::variable(v); }

PlayerKind kind_of(char c) {
  switch (c) {
    case 'L': return PlayerKind::LMA;
    case 'B': return PlayerKind::BoundedlyRational;
    case 'A': return PlayerKind::Adaptive;
    case 'R': return PlayerKind::Rational;
    default: throw UnknownModel(std::string("unknown player kind '") + c + "'");
  }
}

// Numerator of q_i - S_i for LMA players, the FOC otherwise; both define the
// same fixed-point set.
MPoly equilibrium_equation(const ModelSpec& m, int i) {
  if (m.players[static_cast<std::size_t>(i)] == PlayerKind::LMA) {
    RatFunc fp = RatFunc(var(own_q(i))) - lma_response(m.cost, i);
    return fp.num();
  }
  return foc_polynomial(m.cost, i);
}

std::array<RatFunc, 2> jacobian_row(const ModelSpec& m, int i, const RatFunc& dR) {
  std::array<RatFunc, 2> row;
  auto own = static_cast<std::size_t>(i);
  auto rival = static_cast<std::size_t>(1 - i);
  switch (m.players[own]) {
    case PlayerKind::LMA: {
      RatFunc s = lma_response(m.cost, i);
      row[0] = s.derivative(Var::q1);
      row[1] = s.derivative(Var::q2);
      break;
    }
    case PlayerKind::BoundedlyRational:
    case PlayerKind::Rational:
      row[own] = RatFunc();
      row[rival] = dR;
      break;
    case PlayerKind::Adaptive: {
      MPoly k = var(m.speed[own]);
      row[own] = RatFunc(MPoly(1L) - k);
      row[rival] = RatFunc(k) * dR;
      break;
    }
  }
  return row;
}

Inequality ineq(RatFunc f, std::string label) { return Inequality{std::move(f), std::move(label)}; }

}  // namespace

std::vector<Var> ModelSpec::params() const {
  std::vector<Var> out{Var::c1, Var::c2};
  for (std::size_t i = 0; i < 2; ++i) {
    if (players[i] != PlayerKind::Adaptive) continue;
    if (std::find(out.begin(), out.end(), speed[i]) == out.end()) out.push_back(speed[i]);
  }
  return out;
}

ModelSpec model_from_name(std::string_view name, CostKind cost) {
  bool known = false;
  for (auto n : kModelNames) known = known || n == name;
  if (!known) throw UnknownModel("unknown model '" + std::string(name) + "'");
  ModelSpec m;
  m.name = std::string(name);
  m.players = {kind_of(name[0]), kind_of(name[1])};
  m.cost = cost;
  m.timing = m.players[1] == PlayerKind::Rational ? Timing::Sequential : Timing::Simultaneous;
  if (name == "AA") m.speed = {Var::K1, Var::K2};
  return m;
}

CostKind cost_from_name(std::string_view name) {
  if (name == "quadratic") return CostKind::Quadratic;
  if (name == "linear") return CostKind::Linear;
  throw Error("unknown cost kind '" + std::string(name) + "' (expected quadratic or linear)");
}

std::string_view cost_name(CostKind cost) { return cost == CostKind::Quadratic ? "quadratic" : "linear"; }

Var own_q(int i) { return i == 0 ? Var::q1 : Var::q2; }
Var rival_q(int i) { return i == 0 ? Var::q2 : Var::q1; }
Var cost_param(int i) { return i == 0 ? Var::c1 : Var::c2; }

MPoly foc_polynomial(CostKind cost, int i) {
  MPoly qi = var(own_q(i));
  MPoly qo = var(rival_q(i));
  MPoly c = var(cost_param(i));
  MPoly total = qi + qo;
  if (cost == CostKind::Quadratic) return qo - MPoly(2L) * c * qi * total * total;
  return qo - c * total * total;
}

RatFunc lma_response(CostKind cost, int i) {
  MPoly qi = var(own_q(i));
  MPoly qo = var(rival_q(i));
  MPoly c = var(cost_param(i));
  MPoly total = qi + qo;
  MPoly two(2L);
  if (cost == CostKind::Quadratic) return RatFunc(two * qi + qo, two * (MPoly(1L) + c * total * total));
  return RatFunc(two * qi + qo - c * total * total, two);
}

RatFunc implicit_derivative(const MPoly& foc, Var own, Var rival) {
  return RatFunc(-foc.derivative(rival), foc.derivative(own));
}

BiSystem StabilitySystem::equilibrium_system() const {
  BiSystem b;
  b.eqs[0] = eqs[0];
  b.eqs[1] = eqs[1];
  b.ineqs = positivity;
  b.param_constraints = params;
  return b;
}

BiSystem StabilitySystem::full_system() const {
  BiSystem b = equilibrium_system();
  b.ineqs.insert(b.ineqs.end(), jury.begin(), jury.end());
  b.border_only = border_only;
  return b;
}

StabilitySystem stability_system(const ModelSpec& m) {
  StabilitySystem s;
  s.eqs[0] = equilibrium_equation(m, 0);
  s.eqs[1] = equilibrium_equation(m, 1);
  s.positivity = {ineq(RatFunc(var(Var::q1)), "q1"), ineq(RatFunc(var(Var::q2)), "q2")};
  for (auto v : m.params()) {
    s.params.push_back(SignCondition{var(v)});
    if (v == Var::K || v == Var::K1 || v == Var::K2) s.params.push_back(SignCondition{MPoly(1L) - var(v)});
  }
  RatFunc dR1 = implicit_derivative(foc_polynomial(m.cost, 0), Var::q1, Var::q2);
  RatFunc dR2 = implicit_derivative(foc_polynomial(m.cost, 1), Var::q2, Var::q1);
  RatFunc one(MPoly(1L));

  if (m.one_dimensional()) {
    // q1(t+1) = G(q1(t)) with q2(t) = R2(q1(t)).
    RatFunc d;
    switch (m.players[0]) {
      case PlayerKind::BoundedlyRational:
        d = dR1 * dR2;
        break;
      case PlayerKind::LMA: {
        RatFunc s1 = lma_response(m.cost, 0);
        d = s1.derivative(Var::q1) + s1.derivative(Var::q2) * dR2;
        break;
      }
      case PlayerKind::Adaptive: {
        RatFunc k(var(m.speed[0]));
        d = (one - k) + k * dR1 * dR2;
        break;
      }
      case PlayerKind::Rational:
        throw UnknownModel("player 1 cannot be rational");
    }
    s.derivative = d;
    s.jury = {ineq(one + d, "1+dG"), ineq(one - d, "1-dG")};
    return s;
  }

  s.jacobian[0] = jacobian_row(m, 0, dR1);
  s.jacobian[1] = jacobian_row(m, 1, dR2);
  const auto& J = s.jacobian;
  RatFunc tr = J[0][0] + J[1][1];
  RatFunc det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  s.jury = {ineq(one + tr + det, "1+Tr+Det"), ineq(one - tr + det, "1-Tr+Det"), ineq(one - det, "1-Det")};
  s.border_only = {ineq(one + det, "1+Det")};
  return s;
}

double best_response_numeric(CostKind cost, double c, double y) {
  if (!(c > 0.0) || !(y > 0.0)) throw Error("best response needs c > 0 and a positive rival output");
  if (cost == CostKind::Linear) {
    double q = std::sqrt(y / c) - y;
    if (!(q > 0.0)) throw NonpositiveState("best response is not positive", 0);
    return q;
  }
  // g(q) = 2 c q (q + y)^2 - y is increasing on q >= 0, g(0) < 0 <= g(hi).
  auto g = [&](double q) { return 2.0 * c * q * (q + y) * (q + y) - y; };
  double lo = 0.0;
  double hi = std::cbrt(y / (2.0 * c));
  double q = std::min(hi, y / (2.0 * c * y * y + 1e-300));
  if (!(q > lo && q < hi)) q = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double v = g(q);
    if (v == 0.0) return q;
    if (v < 0.0) {
      lo = q;
    } else {
      hi = q;
    }
    double dv = 2.0 * c * (q + y) * (3.0 * q + y);
    double next = q - v / dv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - q) <= 1e-17 * std::max(1.0, q)) return next;
    q = next;
  }
  return q;
}

double lma_numeric(CostKind cost, double c, double own, double rival) {
  double total = own + rival;
  if (cost == CostKind::Quadratic) return (2.0 * own + rival) / (2.0 * (1.0 + c * total * total));
  return (2.0 * own + rival - c * total * total) / 2.0;
}

}  // namespace cournot
