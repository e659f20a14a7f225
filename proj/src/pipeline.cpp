#include "cournot/pipeline.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "cournot/algebra.hpp"
#include "cournot/expr.hpp"
#include "cournot/parallel.hpp"
#include "json.hpp"

namespace cournot {

namespace {

using json = nlohmann::ordered_json;

bool is_speed(Var v) { return v == Var::K || v == Var::K1 || v == Var::K2; }

const Rat kSampleWidth(1, 16);

std::vector<MPoly> drop_constants(const std::vector<MPoly>& polys) {
  std::vector<MPoly> out;
  for (const auto& p : polys) {
    if (!p.is_constant()) out.push_back(p);
  }
  return out;
}

// Product of the nonconstant specializations; univariate in the level variable.
UPoly specialize(const std::vector<MPoly>& polys, const Assignment& at) {
  UPoly prod(std::vector<Rat>{Rat(1)});
  for (const auto& p : polys) {
    MPoly s = p.partial_eval(at);
    if (s.is_constant()) continue;
    prod = prod * UPoly::from_mpoly(s);
  }
  return prod;
}

// One rational per open sector of (lo, hi) cut by the real roots of p.
std::vector<Rat> sector_samples(const UPoly& p, const Rat& lo, const Rat& hi) {
  if (p.degree() < 1) return {(lo + hi) / 2};
  auto roots = isolate_roots(p, Range{lo, hi});
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto& iv = roots[i];
    if (iv.is_point()) continue;
    iv = refine(p, iv, kSampleWidth);
    // Keep the sample strictly inside the sector when an interval touches the box.
    while (!iv.is_point() && (iv.lo == lo || iv.hi == hi)) iv = refine(p, iv, (iv.hi - iv.lo) / 2);
  }
  std::vector<Rat> out;
  Rat prev = lo;
  for (const auto& iv : roots) {
    out.push_back((prev + iv.lo) / 2);
    prev = iv.hi;
  }
  out.push_back((prev + hi) / 2);
  return out;
}

int position(const UPoly& p, const Rat& lo, const Rat& x) {
  if (p.degree() < 1) return 0;
  int below = static_cast<int>(sturm_count(p, Range{lo, x}));
  return 2 * below + (p.sign_at(x) == 0 ? 1 : 0);
}

std::vector<MPoly> project(const std::vector<MPoly>& level, Var v, bool speed) {
  std::vector<MPoly> out;
  for (const auto& f : level) {
    UView u = UView::of(f, v);
    for (const auto& c : u.coeffs) {
      if (!c.is_constant()) out.push_back(c);
    }
    if (u.degree() >= 2) out.push_back(discriminant(u));
    if (speed) {
      out.push_back(f.partial_eval(Assignment{{v, Rat(0)}}));
      out.push_back(f.partial_eval(Assignment{{v, Rat(1)}}));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) pairs.emplace_back(i, j);
  }
  auto res = parallel_map<MPoly>(pairs.size(), [&](std::size_t k) {
    return resultant(level[pairs[k].first], level[pairs[k].second], v);
  });
  out.insert(out.end(), res.begin(), res.end());
  return drop_constants(out);
}

struct Lifter {
  RegionDecomposition& d;

  void run(std::size_t l, Assignment at, std::vector<Rat>& coords, std::vector<int>& cell) {
    Var v = d.free_params[l];
    UPoly p = specialize(d.levels[l], at);
    auto samples = sector_samples(p, d.lower[l], d.upper[l]);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      coords.push_back(samples[i]);
      cell.push_back(static_cast<int>(2 * i));
      Assignment next = at;
      next.set(v, samples[i]);
      if (l + 1 == d.free_params.size()) {
        d.points.push_back(SamplePoint{d.free_params, coords});
        d.cells.push_back(cell);
      } else {
        run(l + 1, next, coords, cell);
      }
      coords.pop_back();
      cell.pop_back();
    }
  }
};

std::string coords_text(const SamplePoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (i) out += ", ";
    out += p.values[i].get_str();
  }
  return out + ")";
}

SamplePoint point_from_strings(const std::vector<std::string>& vals) {
  static const Var order[] = {Var::c1, Var::c2, Var::K};
  SamplePoint p;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    p.vars.push_back(order[i]);
    p.values.push_back(parse_rational(vals[i]));
  }
  return p;
}

SamplePoint with_c1(const SamplePoint& p) {
  SamplePoint out;
  out.vars.push_back(Var::c1);
  out.values.push_back(Rat(1));
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    if (p.vars[i] == Var::c1) continue;
    out.vars.push_back(p.vars[i]);
    out.values.push_back(p.values[i]);
  }
  return out;
}

// Diagonal K1 = K2 plus five fixed speed pairs.
RegionDecomposition fallback_decomposition(const std::vector<MPoly>& factors) {
  RegionDecomposition out;
  out.free_params = {Var::c2, Var::K1, Var::K2};
  out.factors = factors;
  out.mode = "slice+random";
  std::vector<MPoly> diag;
  for (const auto& f : factors) diag.push_back(f.substitute(Var::K2, MPoly::variable(Var::K1)));
  auto sub = decompose(drop_constants(diag), {Var::c2, Var::K1});
  for (std::size_t i = 0; i < sub.points.size(); ++i) {
    const auto& pt = sub.points[i];
    out.points.push_back(SamplePoint{out.free_params, {pt.values[0], pt.values[1], pt.values[1]}});
    std::vector<int> cell{0};
    cell.insert(cell.end(), sub.cells[i].begin(), sub.cells[i].end());
    out.cells.push_back(cell);
  }
  std::mt19937_64 rng(20140201);
  std::uniform_int_distribution<int> pick(1, 63);
  for (int r = 1; r <= 5; ++r) {
    Rat k1(pick(rng), 64);
    Rat k2(pick(rng), 64);
    k1.canonicalize();
    k2.canonicalize();
    Assignment at{{Var::K1, k1}, {Var::K2, k2}};
    std::vector<MPoly> slice;
    for (const auto& f : factors) slice.push_back(f.partial_eval(at));
    auto one = decompose(drop_constants(slice), {Var::c2});
    for (std::size_t i = 0; i < one.points.size(); ++i) {
      out.points.push_back(SamplePoint{out.free_params, {one.points[i].values[0], k1, k2}});
      out.cells.push_back({r, one.cells[i][0]});
    }
  }
  return out;
}

json poly_list(const std::vector<MPoly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(print_canonical(p));
  return a;
}

json point_json(const PointResult& r) {
  json coords = json::object();
  for (std::size_t i = 0; i < r.point.vars.size(); ++i) {
    coords[std::string(var_name(r.point.vars[i]))] = r.point.values[i].get_str();
  }
  json j;
  j["coordinates"] = coords;
  j["equilibrium_count"] = r.equilibrium_count;
  j["stable_count"] = r.stable_count;
  j["cell"] = r.cell;
  return j;
}

json unisas_json(const UniSAS& u) {
  json conds = json::array();
  for (const auto& c : u.conds) {
    json j;
    j["label"] = c.label;
    j["factors"] = poly_list(c.factors);
    conds.push_back(j);
  }
  return conds;
}

json border_json(const BorderData& b) {
  json j;
  j["BP"] = poly_list(b.bp_factors());
  j["disc_T"] = print_canonical(b.disc_T);
  j["SP"] = print_canonical(b.SP);
  j["SP_factors"] = poly_list(b.sp_factors);
  return j;
}

}  // namespace

Assignment SamplePoint::assignment() const {
  Assignment a;
  for (std::size_t i = 0; i < vars.size(); ++i) a.set(vars[i], values[i]);
  return a;
}

const Rat& SamplePoint::get(Var v) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == v) return values[i];
  }
  throw MissingAssignment("sample point has no coordinate " + std::string(var_name(v)));
}

std::string SamplePoint::str() const {
  std::string names = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) names += ", ";
    names += var_name(vars[i]);
  }
  return names + ") = " + coords_text(*this);
}

Normalization normalize_params(const ModelSpec& m) {
  Normalization n;
  for (auto v : m.params()) {
    if (v != Var::c1) n.free_params.push_back(v);
  }
  n.fixed.set(Var::c1, Rat(1));
  return n;
}

SamplePoint normalize_point(const SamplePoint& p) {
  SamplePoint out = p;
  std::optional<Rat> c1;
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    if (p.vars[i] == Var::c1) c1 = p.values[i];
  }
  if (!c1 || *c1 == 1) return out;
  if (sgn(*c1) <= 0) throw Error("c1 must be positive");
  for (std::size_t i = 0; i < out.vars.size(); ++i) {
    if (out.vars[i] == Var::c1) out.values[i] = Rat(1);
    if (out.vars[i] == Var::c2) out.values[i] /= *c1;
  }
  return out;
}

std::vector<MPoly> slice_factors(const std::vector<MPoly>& factors, const Assignment& fixed) {
  std::vector<MPoly> out;
  for (const auto& f : factors) {
    MPoly s = f.partial_eval(fixed);
    if (s.is_zero()) throw OnBoundary("a factor vanishes identically on the normalized slice");
    if (!s.is_constant()) out.push_back(normalized(s));
  }
  return out;
}

RegionDecomposition decompose(const std::vector<MPoly>& factors, const std::vector<Var>& free_params,
                              unsigned max_base_degree) {
  if (free_params.size() > 3) throw TooManyParameters("at most 3 free parameters are supported");
  if (free_params.empty()) throw TooManyParameters("no free parameters to decompose");
  RegionDecomposition d;
  d.free_params = free_params;
  d.factors = drop_constants(factors);
  std::size_t n = free_params.size();
  d.levels.assign(n, {});
  std::vector<MPoly> cur = coprime_squarefree_basis(d.factors);
  for (std::size_t l = n; l-- > 0;) {
    Var v = free_params[l];
    std::vector<MPoly> here;
    std::vector<MPoly> rest;
    for (auto& f : cur) (f.involves(v) ? here : rest).push_back(f);
    for (const auto& f : rest) {
      for (std::size_t k = l; k < n; ++k) {
        if (f.involves(free_params[k])) throw Error("factor involves a variable outside the free parameters");
      }
    }
    d.levels[l] = here;
    if (l == 0) break;
    auto proj = project(here, v, is_speed(v));
    proj.insert(proj.end(), rest.begin(), rest.end());
    cur = coprime_squarefree_basis(proj);
    if (max_base_degree > 0 && l == 1) {
      unsigned total = 0;
      for (const auto& f : cur) total += f.total_degree();
      if (total > max_base_degree) throw BudgetExceeded("projection exceeds the degree budget");
    }
  }
  d.lower.assign(n, Rat(0));
  d.upper.assign(n, Rat(1));
  for (std::size_t l = 0; l < n; ++l) {
    if (is_speed(free_params[l])) continue;
    if (l != 0) throw Error("cost parameters must come before speeds");
    Rat bound(0);
    for (const auto& f : d.levels[0]) bound = std::max(bound, cauchy_bound(UPoly::from_mpoly(f)));
    d.upper[0] = 2 + 2 * bound;
  }
  std::vector<Rat> coords;
  std::vector<int> cell;
  Lifter{d}.run(0, Assignment{}, coords, cell);
  return d;
}

RegionDecomposition decompose(const MPoly& sp, const std::vector<Var>& free_params) {
  return decompose(std::vector<MPoly>{sp}, free_params);
}

std::vector<int> classify_point(const RegionDecomposition& d, const SamplePoint& p0) {
  SamplePoint p = normalize_point(p0);
  Assignment full = p.assignment();
  full.set(Var::c1, Rat(1));
  for (const auto& f : d.factors) {
    if (sgn(f.eval(full)) == 0) throw OnBoundary("point " + p0.str() + " lies on the border polynomial");
  }
  std::vector<int> cell;
  Assignment at;
  for (std::size_t l = 0; l < d.free_params.size(); ++l) {
    Var v = d.free_params[l];
    const Rat& x = p.get(v);
    if (x <= d.lower[l] || x >= d.upper[l]) throw OnBoundary("point " + p0.str() + " is outside the parameter box");
    cell.push_back(position(specialize(d.levels[l], at), d.lower[l], x));
    at.set(v, x);
  }
  return cell;
}

const std::vector<ReferenceFixture>& reference_fixtures() {
  static const std::vector<ReferenceFixture> fx = {
      {"LL", "equilibrium", "c1*c2*(c1-c2)*(c1+c2)", {{"1", "1/2"}, {"1", "2"}}},
      {"LL",
       "stability",
       "c1*c2*(c1-4*c2)*(c1-c2)*(c1+c2)*(c1-1/4*c2)*(c1^2-7*c1*c2+c2^2)",
       {{"2", "1/8"}, {"3", "9/16"}, {"2", "1"}, {"1", "2"}, {"9/16", "3"}, {"1/8", "2"}}},
      {"LB",
       "stability",
       "c1*c2*(c1+c2)*(-c2+c1)*(c1-4*c2)*(c1-1/9*c2)*(c1^3-28*c1^2*c2+4*c1*c2^2-c2^3)"
       "*(c1^3+4*c1^2*c2+12*c1*c2^2-c2^3)*(c1^3+c1^2*c2+17/4*c2^2*c1-1/4*c2^3)",
       {{"1", "1/32"}, {"1", "1/8"}, {"1", "1/2"}, {"1", "2"}, {"1", "10"}, {"1", "13"}, {"1", "18"}}},
      {"BB",
       "stability",
       "c1*c2*(c1-9*c2)*(c1-c2)*(c1+c2)*(c1-1/9*c2)*(c1^2-34*c1*c2+c2^2)",
       {{"1", "1/64"}, {"1", "1/16"}, {"1", "1/2"}, {"1", "2"}, {"1", "10"}, {"1", "34"}}},
      {"LR",
       "stability",
       "c1*c2*(c1+c2)*(-c2+c1)*(c1-4*c2)*(c1-1/9*c2)*(c1^2-21*c1*c2+4*c2^2)",
       {{"1", "1/32"}, {"1", "1/8"}, {"1", "1/2"}, {"1", "2"}, {"1", "6"}, {"1", "10"}}},
      {"AR",
       "stability",
       "K*c1*c2*(K-1)*(c1-9*c2)*(c1-c2)*(c1+c2)*(c1-1/9*c2)*(c1^2*K^2-2*c1*c2*K^2+c2^2*K^2-3*c1^2*K"
       "+14*K*c1*c2-3*c2^2*K+9/4*c2^2-41/2*c1*c2+9/4*c2^2)",
       {{"1", "1/64", "1/2"},
        {"1", "1/16", "1/2"},
        {"1", "1/16", "3/4"},
        {"1", "1/2", "1/2"},
        {"1", "2", "1/2"},
        {"1", "10", "1/8"},
        {"1", "10", "1/2"},
        {"1", "34", "1/2"}}},
  };
  return fx;
}

PointResult evaluate_point(const StabilityReport& r, const SamplePoint& p) {
  PointResult out;
  out.point = with_c1(normalize_point(p));
  Assignment a = out.point.assignment();
  out.equilibrium_count = count_solutions(r.equilibrium, a);
  out.stable_count = count_solutions(r.full, a);
  return out;
}

StabilityReport analyze(const ModelSpec& m) {
  StabilityReport r;
  r.model = m;
  StabilitySystem sys = stability_system(m);
  BiSystem eq = sys.equilibrium_system();
  BiSystem full = sys.full_system();
  r.tri = triangularize(eq);
  r.equilibrium = substitute_ineqs(eq, r.tri);
  r.full = substitute_ineqs(full, r.tri);
  r.equilibrium_border = border_polynomial(r.equilibrium);
  r.full_border = border_polynomial(r.full);

  Normalization norm = normalize_params(m);
  auto factors = slice_factors(r.full_border.sp_factors, norm.fixed);
  if (norm.free_params.size() == 3) {
    try {
      r.decomposition = decompose(factors, norm.free_params, 48);
    } catch (const BudgetExceeded&) {
      r.decomposition = fallback_decomposition(factors);
    }
  } else {
    r.decomposition = decompose(factors, norm.free_params);
  }

  const auto& pts = r.decomposition.points;
  r.points = parallel_map<PointResult>(pts.size(), [&](std::size_t i) {
    PointResult pr = evaluate_point(r, pts[i]);
    pr.cell = r.decomposition.cells[i];
    return pr;
  });

  r.verdict = "unique-stable-everywhere";
  for (const auto& p : r.points) {
    if (p.equilibrium_count != 1) {
      r.verdict = "counterexample";
      r.counterexample = p.point;
      break;
    }
    if (p.stable_count != 1) r.verdict = "conditional";
  }

  if (m.cost != CostKind::Quadratic) return r;
  for (const auto& fx : reference_fixtures()) {
    if (fx.model != m.name) continue;
    ReferenceCheck rc;
    rc.label = fx.label;
    rc.sp_text = fx.sp;
    bool eq_only = fx.label == "equilibrium";
    const BorderData& bd = eq_only ? r.equilibrium_border : r.full_border;
    if (fx.sp) {
      MPoly published = parse_poly(*fx.sp);
      // Published factors that are parameter constraints (1 - K) are not part
      // of our border polynomial; compare without them.
      for (auto v : m.params()) {
        if (!is_speed(v)) continue;
        MPoly c = MPoly(1L) - MPoly::variable(v);
        if (auto q = try_div(published, c)) {
          if (!try_div(bd.SP, c)) {
            published = *q;
            rc.sp_note = "compared without the constraint factor " + print_canonical(c);
          }
        }
      }
      rc.sp_match = equal_up_to_constant(published, bd.SP);
      if (!rc.sp_match) {
        std::string diff;
        for (const auto& f : bd.sp_factors) {
          if (!try_div(published, f)) diff += (diff.empty() ? "" : ", ") + print_canonical(f);
        }
        rc.sp_note += (rc.sp_note.empty() ? "" : "; ") + std::string("factors not dividing the published form: ") +
                      (diff.empty() ? "none" : diff);
      }
    }
    RegionDecomposition eqd;
    if (eq_only) eqd = decompose(slice_factors(bd.sp_factors, norm.fixed), norm.free_params);
    const RegionDecomposition& dd = eq_only ? eqd : r.decomposition;
    std::set<std::vector<int>> seen;
    for (const auto& s : fx.points) {
      SamplePoint p = point_from_strings(s);
      PointResult pr = evaluate_point(r, p);
      pr.point = p;
      pr.cell = classify_point(dd, p);
      unsigned count = eq_only ? pr.equilibrium_count : pr.stable_count;
      if (count != 1) rc.all_one = false;
      if (!seen.insert(pr.cell).second) rc.distinct_cells = false;
      rc.points.push_back(pr);
    }
    r.reference.push_back(std::move(rc));
  }
  return r;
}

std::string report_json(const StabilityReport& r) {
  json j;
  j["model"] = r.model.name;
  j["cost"] = std::string(cost_name(r.model.cost));
  j["T"] = print_canonical(r.tri.T.to_mpoly());
  j["back_substitution"] = {{"q2_numerator", print_canonical(r.tri.N)},
                            {"q2_denominator", print_canonical(r.tri.D)}};
  j["conditions"] = unisas_json(r.full);
  j["border_only"] = poly_list(r.full.border_only);
  j["BP"] = poly_list(r.full_border.bp_factors());
  j["SP"] = print_canonical(r.full_border.SP);
  j["SP_factors"] = poly_list(r.full_border.sp_factors);
  j["equilibrium"] = border_json(r.equilibrium_border);
  json dec;
  json fp = json::array();
  for (auto v : r.decomposition.free_params) fp.push_back(std::string(var_name(v)));
  dec["free_params"] = fp;
  dec["mode"] = r.decomposition.mode;
  dec["upper_bounds"] = json::array();
  for (const auto& u : r.decomposition.upper) dec["upper_bounds"].push_back(u.get_str());
  dec["cells"] = r.decomposition.points.size();
  j["decomposition"] = dec;
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(point_json(p));
  j["points"] = pts;
  j["verdict"] = r.verdict;
  j["counterexample"] = r.counterexample ? json(r.counterexample->str()) : json(nullptr);
  if (r.model.cost == CostKind::Linear) {
    json lma = json::array();
    for (int i = 0; i < 2; ++i) lma.push_back(print_canonical(lma_response(r.model.cost, i)));
    j["lma_response"] = lma;
  }
  json cmp = json::array();
  for (const auto& rc : r.reference) {
    json c;
    c["label"] = rc.label;
    c["published_SP"] = rc.sp_text ? json(*rc.sp_text) : json(nullptr);
    c["SP_match"] = rc.sp_match;
    c["note"] = rc.sp_note;
    json ps = json::array();
    for (const auto& p : rc.points) ps.push_back(point_json(p));
    c["points"] = ps;
    c["all_counts_one"] = rc.all_one;
    c["distinct_cells"] = rc.distinct_cells;
    cmp.push_back(c);
  }
  j["paper_comparison"] = cmp;
  return j.dump(2) + "\n";
}

}  // namespace cournot
