#pragma once

// Per-model analysis: eliminate, form border polynomials, decompose the
// normalized parameter space, count solutions at one point per cell.

#include <optional>
#include <string>
#include <vector>

#include "cournot/elimination.hpp"
#include "cournot/models.hpp"

namespace cournot {

struct SamplePoint {
  std::vector<Var> vars;
  std::vector<Rat> values;

  Assignment assignment() const;
  const Rat& get(Var v) const;
  std::string str() const;  // "(c1, c2, K) = (1, 1/2, 1/2)"
};

struct Normalization {
  std::vector<Var> free_params;  // c2, then speeds
  Assignment fixed;              // c1 = 1
};

Normalization normalize_params(const ModelSpec& m);

// Moves a point onto the c1 = 1 slice (c2 -> c2 / c1), which leaves all
// stability verdicts unchanged.
SamplePoint normalize_point(const SamplePoint& p);

struct RegionDecomposition {
  std::vector<Var> free_params;
  std::vector<MPoly> factors;  // the decomposed polynomials
  // levels[l]: coprime squarefree basis in free_params[0..l] whose main
  // variable is free_params[l].
  std::vector<std::vector<MPoly>> levels;
  std::vector<Rat> lower;
  std::vector<Rat> upper;
  std::vector<SamplePoint> points;
  std::vector<std::vector<int>> cells;
  std::string mode = "full";
};

// factors: polynomials in free_params alone (c1 already fixed). Speeds live
// in (0, 1); the cost ratio in (0, B) with B past every root.
// A nonzero max_base_degree aborts with BudgetExceeded once the projected
// base-level polynomials exceed that total degree.
RegionDecomposition decompose(const std::vector<MPoly>& factors, const std::vector<Var>& free_params,
                              unsigned max_base_degree = 0);
RegionDecomposition decompose(const MPoly& sp, const std::vector<Var>& free_params);

// Per-level position: 2i for the i-th open sector, 2i + 1 for the i-th root.
// Throws OnBoundary if some factor vanishes at p.
std::vector<int> classify_point(const RegionDecomposition& d, const SamplePoint& p);

struct PointResult {
  SamplePoint point;  // c1 = 1 slice
  unsigned equilibrium_count = 0;
  unsigned stable_count = 0;
  std::vector<int> cell;
};

struct ReferenceCheck {
  std::string label;
  std::optional<std::string> sp_text;  // published squarefree part, if any
  bool sp_match = false;
  std::string sp_note;
  std::vector<PointResult> points;
  bool all_one = true;
  bool distinct_cells = true;
};

struct StabilityReport {
  ModelSpec model;
  Triangular tri;
  UniSAS equilibrium;
  UniSAS full;
  BorderData equilibrium_border;
  BorderData full_border;
  RegionDecomposition decomposition;
  std::vector<PointResult> points;
  std::string verdict;  // unique-stable-everywhere | conditional | counterexample
  std::optional<SamplePoint> counterexample;
  std::vector<ReferenceCheck> reference;
};

// Reference data for the quadratic-cost models.
struct ReferenceFixture {
  std::string model;
  std::string label;  // "equilibrium" or "stability"
  std::optional<std::string> sp;
  std::vector<std::vector<std::string>> points;  // (c1, c2[, K])
};
const std::vector<ReferenceFixture>& reference_fixtures();

// Counts at p (any c1 > 0; normalized internally).
PointResult evaluate_point(const StabilityReport& r, const SamplePoint& p);

StabilityReport analyze(const ModelSpec& m);

std::string report_json(const StabilityReport& r);

// Factors restricted to c1 = 1, constants dropped. Throws OnBoundary if one
// vanishes identically there.
std::vector<MPoly> slice_factors(const std::vector<MPoly>& factors, const Assignment& fixed);

}  // namespace cournot
