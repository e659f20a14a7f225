#pragma once

// Floating-point side: iterate the maps, solve for equilibria, compute
// spectral radii, and draw the (c1, c2) plane.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cournot/models.hpp"
#include "cournot/pipeline.hpp"

namespace cournot {

using State = std::array<double, 2>;

// Parameter values indexed like the alphabet; q1/q2 slots are ignored.
struct NumParams {
  std::array<double, kVarCount> v{};

  double operator[](Var x) const { return v[index(x)]; }
  double& operator[](Var x) { return v[index(x)]; }
  static NumParams from(const SamplePoint& p);
  static NumParams costs(double c1, double c2, double k = 0.5);
};

State step(const ModelSpec& m, const NumParams& p, const State& q);

struct Orbit {
  std::vector<State> states;
  bool converged = false;
  std::optional<State> limit;
};

// Throws NonpositiveState (with the period index) when an iterate leaves the
// open positive quadrant.
Orbit iterate(const ModelSpec& m, const NumParams& p, const State& q0, std::size_t max_t = 100000,
              double tol = 1e-10);

struct NumericEquilibrium {
  double q1 = 0;
  double q2 = 0;
  double residual = 0;
  double spectral_radius = 0;
};

// Positive root of the two first-order conditions; closed form for LL.
State ll_closed_form(double c1, double c2);
// Damped Newton on the first-order conditions from one start.
std::optional<State> solve_focs(CostKind cost, double c1, double c2, const State& seed);
// Damped Newton from the closed-form seed and 8 scalings of it. Throws
// NoConvergence if no start reaches residual < 1e-10.
NumericEquilibrium find_equilibrium(const ModelSpec& m, const NumParams& p);

// Central differences of one period of the map.
std::array<std::array<double, 2>, 2> jacobian_fd(const ModelSpec& m, const NumParams& p, const State& q,
                                                 double h = 1e-6);
// Jacobian of one period from the symbolic entries. For sequential timing
// the second row is R2' times the first.
std::array<std::array<double, 2>, 2> jacobian_analytic(const ModelSpec& m, const NumParams& p, const State& q);
double spectral_radius(const std::array<std::array<double, 2>, 2>& j);

struct CrossCheck {
  SamplePoint point;
  bool symbolic_stable = false;
  double spectral_radius = 0;
  bool excluded = false;  // |rho - 1| < 1e-3
  bool agrees = false;
};

std::vector<CrossCheck> cross_validate(const ModelSpec& m, const std::vector<PointResult>& points);

struct PlaneSummary {
  Rat bound;                  // lattice covers (0, bound]^2
  unsigned rays = 0;          // sign changes along the top then right edge
  bool points_off = true;     // every marked point has SP != 0
  std::size_t segments = 0;   // contour segments drawn
};

// Writes an SVG to svg_path and the lattice to csv_path (p1,p2,sp_sign).
// sp must involve only c1 and c2.
PlaneSummary emit_plane(const MPoly& sp, const std::vector<SamplePoint>& points, unsigned grid,
                        const std::string& svg_path, const std::string& csv_path);

// All complex roots (Aberth iteration); coeffs[i] multiplies x^i.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

void write_orbit_csv(const Orbit& o, const std::string& path);

}  // namespace cournot
