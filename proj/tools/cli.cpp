#include "cournot/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "cournot/acceptance.hpp"
#include "cournot/dynamics.hpp"
#include "cournot/expr.hpp"
#include "cournot/pipeline.hpp"

namespace cournot {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "c1=1/2,c2=1,K=1/2" or positional "1/2,1,1/2" in the model's parameter order.
SamplePoint parse_params(const ModelSpec& m, const std::string& text) {
  SamplePoint p;
  auto order = m.params();
  auto items = split(text, ',');
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto eq = items[i].find('=');
    Var v;
    std::string value = items[i];
    if (eq != std::string::npos) {
      auto name = items[i].substr(0, eq);
      auto var = var_from_name(name);
      if (!var) throw Error("unknown parameter '" + name + "'");
      v = *var;
      value = items[i].substr(eq + 1);
    } else {
      if (i >= order.size()) throw Error("too many parameter values");
      v = order[i];
    }
    p.vars.push_back(v);
    p.values.push_back(parse_rational(value));
  }
  for (auto v : order) {
    bool have = false;
    for (auto x : p.vars) have = have || x == v;
    if (!have) throw Error("missing value for parameter " + std::string(var_name(v)));
  }
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    Var v = p.vars[i];
    if (sgn(p.values[i]) <= 0) throw Error(std::string(var_name(v)) + " must be positive");
    if ((v == Var::K || v == Var::K1 || v == Var::K2) && p.values[i] >= 1) {
      throw Error(std::string(var_name(v)) + " must lie in (0, 1)");
    }
  }
  return p;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

int cmd_analyze(const std::string& model, const std::string& costs, const std::string& out_path, std::ostream& out) {
  auto report = analyze(model_from_name(model, cost_from_name(costs)));
  write_text(out_path, report_json(report), out);
  return kExitOk;
}

int cmd_regions(const std::string& model, const std::string& costs, std::ostream& out) {
  auto r = analyze(model_from_name(model, cost_from_name(costs)));
  const auto& d = r.decomposition;
  out << "model " << model << " (" << costs << "), mode " << d.mode << ", " << d.points.size() << " cells\n";
  out << "SP = " << print_canonical(r.full_border.SP) << "\n";
  for (const auto& p : r.points) {
    out << "  cell [";
    for (std::size_t i = 0; i < p.cell.size(); ++i) out << (i ? "," : "") << p.cell[i];
    out << "] " << p.point.str() << "  equilibria " << p.equilibrium_count << ", stable " << p.stable_count << "\n";
  }
  out << "verdict " << r.verdict << "\n";
  return kExitOk;
}

int cmd_simulate(const std::string& model, const std::string& costs, const std::string& params, const std::string& q0s,
                 std::size_t iters, double tol, const std::string& csv, std::ostream& out) {
  auto m = model_from_name(model, cost_from_name(costs));
  auto point = parse_params(m, params);
  auto q = split(q0s, ',');
  if (q.size() != 2) throw Error("--q0 needs two comma-separated values");
  State q0{parse_rational(q[0]).get_d(), parse_rational(q[1]).get_d()};
  if (!(q0[0] > 0 && q0[1] > 0)) throw Error("--q0 must be positive");
  NumParams p;
  for (std::size_t i = 0; i < point.vars.size(); ++i) p[point.vars[i]] = point.values[i].get_d();
  Orbit o;
  try {
    o = iterate(m, p, q0, iters, tol);
  } catch (const NonpositiveState& e) {
    // The orbit is deterministic, so replay it up to the last positive state.
    if (!csv.empty()) write_orbit_csv(iterate(m, p, q0, e.period() - 1, tol), csv);
    out << "not converged: " << e.what() << "\n";
    return kExitNotConverged;
  }
  if (!csv.empty()) write_orbit_csv(o, csv);
  out << std::setprecision(12);
  if (o.converged) {
    out << "converged after " << o.states.size() - 1 << " periods to (" << (*o.limit)[0] << ", " << (*o.limit)[1]
        << ")\n";
    return kExitOk;
  }
  out << "not converged after " << o.states.size() - 1 << " periods; last state (" << o.states.back()[0] << ", "
      << o.states.back()[1] << ")\n";
  return kExitNotConverged;
}

int cmd_plane(const std::string& model, const std::string& costs, const std::string& which, const std::string& sp_text,
              unsigned grid, const std::string& svg, std::string csv, std::ostream& out) {
  MPoly sp;
  std::vector<SamplePoint> points;
  if (!sp_text.empty()) {
    sp = parse_poly(sp_text);
  } else {
    auto m = model_from_name(model, cost_from_name(costs));
    if (m.params().size() != 2) throw Error("plane plots need a model with exactly the parameters c1, c2");
    auto r = analyze(m);
    bool eq = which == "equilibrium";
    if (!eq && which != "stability") throw Error("--which is equilibrium or stability");
    sp = eq ? r.equilibrium_border.SP : r.full_border.SP;
    for (const auto& rc : r.reference) {
      if (rc.label != which) continue;
      for (const auto& p : rc.points) points.push_back(p.point);
    }
    if (points.empty()) {
      for (const auto& p : r.points) points.push_back(p.point);
    }
  }
  if (csv.empty()) {
    csv = svg;
    auto dot = csv.rfind('.');
    csv = (dot == std::string::npos ? csv : csv.substr(0, dot)) + ".csv";
  }
  auto s = emit_plane(sp, points, grid, svg, csv);
  out << "wrote " << svg << " and " << csv << ": " << s.rays << " rays, " << s.segments << " contour segments, "
      << (s.points_off ? "points off the contours" : "a point lies on a contour") << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact stability analysis and simulation of Cournot duopoly games"};
  app.require_subcommand(1);

  std::string model = "LL";
  std::string costs = "quadratic";
  std::string out_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Solve a model symbolically and print its report as JSON");
  analyze_cmd->add_option("--model", model, "LL, LB, BB, BR, LR, AR, AB, AL or AA")->required();
  analyze_cmd->add_option("--costs", costs, "quadratic or linear");
  analyze_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  auto* regions_cmd = app.add_subcommand("regions", "List the parameter cells with their sample points and counts");
  regions_cmd->add_option("--model", model)->required();
  regions_cmd->add_option("--costs", costs);

  std::string params;
  std::string q0;
  std::size_t iters = 100000;
  double tol = 1e-10;
  std::string csv;
  auto* sim_cmd = app.add_subcommand("simulate", "Iterate a map from an initial state");
  sim_cmd->add_option("--model", model)->required();
  sim_cmd->add_option("--costs", costs);
  sim_cmd->add_option("--params", params, "c1=1/2,c2=1/2[,K=1/2] or values in that order")->required();
  sim_cmd->add_option("--q0", q0, "Initial outputs q1,q2")->required();
  sim_cmd->add_option("--iters", iters, "Maximum number of periods");
  sim_cmd->add_option("--tol", tol, "Sup-norm step size that counts as converged");
  sim_cmd->add_option("--csv", csv, "Write the orbit as t,q1,q2");

  std::string which = "stability";
  std::string sp_text;
  unsigned grid = 200;
  std::string svg = "plane.svg";
  auto* plane_cmd = app.add_subcommand("plane", "Draw the (c1, c2) plane cut by a border polynomial");
  plane_cmd->add_option("--model", model);
  plane_cmd->add_option("--costs", costs);
  plane_cmd->add_option("--which", which, "equilibrium or stability");
  plane_cmd->add_option("--sp", sp_text, "Plot this polynomial in c1, c2 instead");
  plane_cmd->add_option("--grid", grid, "Lattice points per side");
  plane_cmd->add_option("--out", svg, "SVG output path");
  plane_cmd->add_option("--csv", csv, "CSV output path (default: next to the SVG)");

  std::string only;
  std::string out_dir;
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the acceptance suite");
  verify_cmd->add_option("--only", only, "A model name (e.g. LL) or criterion ids (e.g. 4 or 1,3)");
  verify_cmd->add_option("--out-dir", out_dir, "Directory for the generated figures");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(model, costs, out_path, out);
    if (*regions_cmd) return cmd_regions(model, costs, out);
    if (*sim_cmd) return cmd_simulate(model, costs, params, q0, iters, tol, csv, out);
    if (*plane_cmd) return cmd_plane(model, costs, which, sp_text, grid, svg, csv, out);
    if (*verify_cmd) {
      auto opts = parse_only(only);
      opts.out_dir = out_dir;
      auto results = run_acceptance(opts);
      print_results(out, results);
      for (const auto& r : results) {
        if (!r.pass) return kExitError;
      }
      return kExitOk;
    }
  } catch (const UnknownModel& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnknownModel;
  } catch (const DegenerateSystem& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ZeroBorderPolynomial& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace cournot
