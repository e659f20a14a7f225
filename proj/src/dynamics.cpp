#include "cournot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cournot/expr.hpp"

namespace cournot {

namespace {

using Mat = std::array<std::array<double, 2>, 2>;

double cost_of(const NumParams& p, int i) { return p[cost_param(i)]; }

double speed_of(const ModelSpec& m, const NumParams& p, int i) { return p[m.speed[static_cast<std::size_t>(i)]]; }

// New output of player i given its own and the rival's current output.
double respond(const ModelSpec& m, const NumParams& p, int i, double own, double rival) {
  double c = cost_of(p, i);
  switch (m.players[static_cast<std::size_t>(i)]) {
    case PlayerKind::LMA: return lma_numeric(m.cost, c, own, rival);
    case PlayerKind::BoundedlyRational:
    case PlayerKind::Rational: return best_response_numeric(m.cost, c, rival);
    case PlayerKind::Adaptive: {
      double k = speed_of(m, p, i);
      return (1.0 - k) * own + k * best_response_numeric(m.cost, c, rival);
    }
  }
  return 0.0;
}

std::array<double, 2> focs(CostKind cost, double c1, double c2, const State& q) {
  double t = q[0] + q[1];
  if (cost == CostKind::Quadratic) return {q[1] - 2 * c1 * q[0] * t * t, q[0] - 2 * c2 * q[1] * t * t};
  return {q[1] - c1 * t * t, q[0] - c2 * t * t};
}

Mat foc_jacobian(CostKind cost, double c1, double c2, const State& q) {
  double t = q[0] + q[1];
  if (cost == CostKind::Quadratic) {
    return {{{-2 * c1 * (t * t + 2 * q[0] * t), 1 - 4 * c1 * q[0] * t},
             {1 - 4 * c2 * q[1] * t, -2 * c2 * (t * t + 2 * q[1] * t)}}};
  }
  return {{{-2 * c1 * t, 1 - 2 * c1 * t}, {1 - 2 * c2 * t, -2 * c2 * t}}};
}

double sup(const std::array<double, 2>& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

bool positive(const State& q) { return q[0] > 0 && q[1] > 0 && std::isfinite(q[0]) && std::isfinite(q[1]); }

std::optional<State> newton(CostKind cost, double c1, double c2, State q) {
  double r = sup(focs(cost, c1, c2, q));
  for (int it = 0; it < 100 && r > 0; ++it) {
    Mat j = foc_jacobian(cost, c1, c2, q);
    auto f = focs(cost, c1, c2, q);
    double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (det == 0 || !std::isfinite(det)) break;
    State d{-(j[1][1] * f[0] - j[0][1] * f[1]) / det, -(-j[1][0] * f[0] + j[0][0] * f[1]) / det};
    double lambda = 1.0;
    State next = q;
    double rn = r;
    while (lambda > 1e-10) {
      next = {q[0] + lambda * d[0], q[1] + lambda * d[1]};
      if (positive(next)) {
        rn = sup(focs(cost, c1, c2, next));
        if (rn < r) break;
      }
      lambda /= 2;
    }
    if (!(rn < r)) break;
    q = next;
    r = rn;
  }
  // Relative to the output scale, so iterates collapsing onto the origin are rejected.
  if (positive(q) && r < 1e-10 * std::min(1.0, q[0] + q[1])) return q;
  return std::nullopt;
}

std::array<double, kVarCount> at_state(const NumParams& p, const State& q) {
  auto a = p.v;
  a[index(Var::q1)] = q[0];
  a[index(Var::q2)] = q[1];
  return a;
}

std::string svg_num(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

}  // namespace

NumParams NumParams::from(const SamplePoint& pt) {
  NumParams p;
  p[Var::c1] = 1.0;
  for (std::size_t i = 0; i < pt.vars.size(); ++i) p[pt.vars[i]] = pt.values[i].get_d();
  return p;
}

NumParams NumParams::costs(double c1, double c2, double k) {
  NumParams p;
  p[Var::c1] = c1;
  p[Var::c2] = c2;
  p[Var::K] = p[Var::K1] = p[Var::K2] = k;
  return p;
}

State step(const ModelSpec& m, const NumParams& p, const State& q) {
  double q1 = respond(m, p, 0, q[0], q[1]);
  if (m.timing == Timing::Sequential) return {q1, respond(m, p, 1, q[1], q1)};
  return {q1, respond(m, p, 1, q[1], q[0])};
}

Orbit iterate(const ModelSpec& m, const NumParams& p, const State& q0, std::size_t max_t, double tol) {
  if (!positive(q0)) throw NonpositiveState("initial state must be positive", 0);
  Orbit o;
  o.states.push_back(q0);
  for (std::size_t t = 1; t <= max_t; ++t) {
    State next;
    try {
      next = step(m, p, o.states.back());
    } catch (const NonpositiveState&) {
      throw NonpositiveState("state left the positive quadrant at period " + std::to_string(t), t);
    }
    if (!positive(next)) throw NonpositiveState("state left the positive quadrant at period " + std::to_string(t), t);
    const State& prev = o.states.back();
    double dist = std::max(std::abs(next[0] - prev[0]), std::abs(next[1] - prev[1]));
    o.states.push_back(next);
    if (dist < tol) {
      o.converged = true;
      o.limit = next;
      break;
    }
  }
  return o;
}

std::optional<State> solve_focs(CostKind cost, double c1, double c2, const State& seed) {
  return newton(cost, c1, c2, seed);
}

State ll_closed_form(double c1, double c2) {
  double s1 = std::sqrt(c1);
  double s2 = std::sqrt(c2);
  double scale = 1.0 / std::sqrt(2.0 * std::sqrt(c1 * c2));
  return {s2 / (s1 + s2) * scale, s1 / (s1 + s2) * scale};
}

NumericEquilibrium find_equilibrium(const ModelSpec& m, const NumParams& p) {
  double c1 = p[Var::c1];
  double c2 = p[Var::c2];
  State seed;
  if (m.cost == CostKind::Quadratic) {
    seed = ll_closed_form(c1, c2);
  } else {
    double t = (c1 + c2) * (c1 + c2);
    seed = {c2 / t, c1 / t};
  }
  static const int kScalings[] = {0, 1, -1, 2, -2, 3, -3, 4, -4};
  for (int k : kScalings) {
    double f = std::ldexp(1.0, k);
    if (auto q = newton(m.cost, c1, c2, State{seed[0] * f, seed[1] * f})) {
      NumericEquilibrium e;
      e.q1 = (*q)[0];
      e.q2 = (*q)[1];
      e.residual = sup(focs(m.cost, c1, c2, *q));
      e.spectral_radius = spectral_radius(jacobian_fd(m, p, *q));
      return e;
    }
  }
  throw NoConvergence("Newton iteration found no positive equilibrium for model " + m.name);
}

Mat jacobian_fd(const ModelSpec& m, const NumParams& p, const State& q, double h) {
  Mat j{};
  for (int col = 0; col < 2; ++col) {
    double hc = h * std::max(std::abs(q[static_cast<std::size_t>(col)]), 1e-3);
    State plus = q;
    State minus = q;
    plus[static_cast<std::size_t>(col)] += hc;
    minus[static_cast<std::size_t>(col)] -= hc;
    State fp = step(m, p, plus);
    State fm = step(m, p, minus);
    for (int row = 0; row < 2; ++row) {
      j[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
          (fp[static_cast<std::size_t>(row)] - fm[static_cast<std::size_t>(row)]) / (2 * hc);
    }
  }
  return j;
}

Mat jacobian_analytic(const ModelSpec& m, const NumParams& p, const State& q) {
  auto a = at_state(p, q);
  Mat j{};
  if (!m.one_dimensional()) {
    StabilitySystem s = stability_system(m);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) j[r][c] = s.jacobian[r][c].eval_double(a);
    }
    return j;
  }
  RatFunc dR1 = implicit_derivative(foc_polynomial(m.cost, 0), Var::q1, Var::q2);
  RatFunc dR2 = implicit_derivative(foc_polynomial(m.cost, 1), Var::q2, Var::q1);
  double f1 = 0;
  double f2 = 0;
  switch (m.players[0]) {
    case PlayerKind::LMA: {
      RatFunc s1 = lma_response(m.cost, 0);
      f1 = s1.derivative(Var::q1).eval_double(a);
      f2 = s1.derivative(Var::q2).eval_double(a);
      break;
    }
    case PlayerKind::BoundedlyRational:
    case PlayerKind::Rational:
      f2 = dR1.eval_double(a);
      break;
    case PlayerKind::Adaptive: {
      double k = speed_of(m, p, 0);
      f1 = 1 - k;
      f2 = k * dR1.eval_double(a);
      break;
    }
  }
  double r2 = dR2.eval_double(a);
  j[0] = {f1, f2};
  j[1] = {r2 * f1, r2 * f2};
  return j;
}

double spectral_radius(const Mat& j) {
  double tr = j[0][0] + j[1][1];
  double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  double disc = tr * tr - 4 * det;
  if (disc >= 0) {
    double s = std::sqrt(disc);
    return std::max(std::abs((tr + s) / 2), std::abs((tr - s) / 2));
  }
  return std::sqrt(det);
}

std::vector<CrossCheck> cross_validate(const ModelSpec& m, const std::vector<PointResult>& points) {
  std::vector<CrossCheck> out;
  for (const auto& pr : points) {
    CrossCheck c;
    c.point = pr.point;
    c.symbolic_stable = pr.equilibrium_count == 1 && pr.stable_count == 1;
    NumericEquilibrium e = find_equilibrium(m, NumParams::from(pr.point));
    c.spectral_radius = e.spectral_radius;
    c.excluded = std::abs(e.spectral_radius - 1) < 1e-3;
    c.agrees = (e.spectral_radius < 1) == c.symbolic_stable;
    out.push_back(c);
  }
  return out;
}

PlaneSummary emit_plane(const MPoly& sp, const std::vector<SamplePoint>& points, unsigned grid,
                        const std::string& svg_path, const std::string& csv_path) {
  for (auto v : kAllVars) {
    if (v != Var::c1 && v != Var::c2 && sp.involves(v)) throw Error("plane plots need a polynomial in c1 and c2");
  }
  if (grid < 2) throw Error("grid must be at least 2");
  PlaneSummary s;
  double top = 1.0;
  for (const auto& p : points) {
    top = std::max({top, p.get(Var::c1).get_d(), p.get(Var::c2).get_d()});
  }
  s.bound = Rat(static_cast<long>(std::ceil(1.25 * top)));
  const unsigned n = grid;
  std::vector<int> sign((n + 1) * (n + 1), 0);
  std::vector<double> val((n + 1) * (n + 1), 0.0);
  auto at = [&](unsigned i, unsigned j) -> std::size_t { return static_cast<std::size_t>(j) * (n + 1) + i; };
  auto coord = [&](unsigned i) {
    Rat x = s.bound * i / n;
    x.canonicalize();
    return x;
  };

  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot write " + csv_path);
  csv << "p1,p2,sp_sign\n";
  for (unsigned j = 1; j <= n; ++j) {
    for (unsigned i = 1; i <= n; ++i) {
      Assignment a{{Var::c1, coord(i)}, {Var::c2, coord(j)}};
      Rat v = sp.eval(a);
      sign[at(i, j)] = sgn(v);
      val[at(i, j)] = v.get_d();
      csv << coord(i).get_str() << "," << coord(j).get_str() << "," << sign[at(i, j)] << "\n";
    }
  }

  // Along the top edge left to right, then down the right edge.
  int last = 0;
  auto visit = [&](int sg) {
    if (sg == 0) return;
    if (last != 0 && sg != last) ++s.rays;
    last = sg;
  };
  for (unsigned i = 1; i <= n; ++i) visit(sign[at(i, n)]);
  for (unsigned j = n; j-- > 1;) visit(sign[at(n, j)]);

  const double size = 600.0;
  const double margin = 40.0;
  double cell = size / n;
  double bnd = s.bound.get_d();
  auto px = [&](double x) { return margin + x / bnd * size; };
  auto py = [&](double y) { return margin + size - y / bnd * size; };

  std::ofstream svg(svg_path);
  if (!svg) throw Error("cannot write " + svg_path);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
      << size + 2 * margin << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // One rectangle per run of equal sign in a lattice row.
  for (unsigned j = 1; j <= n; ++j) {
    unsigned i = 1;
    while (i <= n) {
      unsigned k = i;
      while (k + 1 <= n && sign[at(k + 1, j)] == sign[at(i, j)]) ++k;
      int sg = sign[at(i, j)];
      const char* fill = sg > 0 ? "#cfe3f7" : (sg < 0 ? "#f7dccf" : "#444444");
      svg << "<rect x=\"" << svg_num(margin + (i - 1) * cell) << "\" y=\"" << svg_num(margin + size - j * cell)
          << "\" width=\"" << svg_num((k - i + 1) * cell) << "\" height=\"" << svg_num(cell) << "\" fill=\"" << fill
          << "\"/>\n";
      i = k + 1;
    }
  }

  // Marching squares on the lattice; zero nodes count as nonnegative.
  std::ostringstream path;
  auto cross = [&](unsigned i0, unsigned j0, unsigned i1, unsigned j1, double& x, double& y) {
    double a = val[at(i0, j0)];
    double b = val[at(i1, j1)];
    double t = (a == b) ? 0.5 : a / (a - b);
    x = (i0 + t * (static_cast<double>(i1) - i0)) * bnd / n;
    y = (j0 + t * (static_cast<double>(j1) - j0)) * bnd / n;
  };
  for (unsigned j = 1; j < n; ++j) {
    for (unsigned i = 1; i < n; ++i) {
      unsigned ci[4] = {i, i + 1, i + 1, i};
      unsigned cj[4] = {j, j, j + 1, j + 1};
      bool pos[4];
      for (int k = 0; k < 4; ++k) pos[k] = sign[at(ci[k], cj[k])] >= 0;
      std::vector<std::pair<double, double>> hits;
      for (int k = 0; k < 4; ++k) {
        int l = (k + 1) % 4;
        if (pos[k] == pos[l]) continue;
        double x = 0;
        double y = 0;
        cross(ci[k], cj[k], ci[l], cj[l], x, y);
        hits.emplace_back(x, y);
      }
      for (std::size_t h = 0; h + 1 < hits.size(); h += 2) {
        path << "M" << svg_num(px(hits[h].first)) << " " << svg_num(py(hits[h].second)) << "L"
             << svg_num(px(hits[h + 1].first)) << " " << svg_num(py(hits[h + 1].second));
        ++s.segments;
      }
    }
  }
  svg << "<path d=\"" << path.str() << "\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"/>\n";
  svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << margin + size / 2 << "\" y=\"" << size + 2 * margin - 8 << "\" font-size=\"14\">c1</text>\n";
  svg << "<text x=\"8\" y=\"" << margin + size / 2 << "\" font-size=\"14\">c2</text>\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    Assignment a{{Var::c1, p.get(Var::c1)}, {Var::c2, p.get(Var::c2)}};
    if (sgn(sp.eval(a)) == 0) s.points_off = false;
    double x = px(p.get(Var::c1).get_d());
    double y = py(p.get(Var::c2).get_d());
    svg << "<circle cx=\"" << svg_num(x) << "\" cy=\"" << svg_num(y) << "\" r=\"4\" fill=\"red\"/>\n";
    svg << "<text x=\"" << svg_num(x + 6) << "\" y=\"" << svg_num(y - 6) << "\" font-size=\"12\">s" << k + 1
        << "</text>\n";
  }
  svg << "</svg>\n";
  return s;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
  using C = std::complex<double>;
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0.0) --n;
  if (n <= 1) return {};
  std::size_t deg = n - 1;
  double lead = coeffs[deg];
  double radius = 0;
  for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, std::abs(coeffs[i] / lead));
  radius = 1 + radius;
  std::vector<C> z(deg);
  for (std::size_t k = 0; k < deg; ++k) z[k] = std::polar(radius * 0.5, 2 * M_PI * (k + 0.25) / deg);
  auto horner = [&](C x, C& dp) {
    C p = coeffs[deg];
    dp = 0;
    for (std::size_t i = deg; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + coeffs[i];
    }
    return p;
  };
  for (int it = 0; it < 1000; ++it) {
    double moved = 0;
    for (std::size_t k = 0; k < deg; ++k) {
      C dp;
      C p = horner(z[k], dp);
      if (p == C(0)) continue;
      C ratio = p / dp;
      C sum = 0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      C w = ratio / (1.0 - ratio * sum);
      z[k] -= w;
      moved = std::max(moved, std::abs(w) / std::max(1.0, std::abs(z[k])));
    }
    if (moved < 1e-15) break;
  }
  return z;
}

void write_orbit_csv(const Orbit& o, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f.precision(17);
  f << "t,q1,q2\n";
  for (std::size_t t = 0; t < o.states.size(); ++t) f << t << "," << o.states[t][0] << "," << o.states[t][1] << "\n";
}

}  // namespace cournot
