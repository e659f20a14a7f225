#pragma once

// The nine acceptance criteria, shared by `cournot verify-paper` and the
// acceptance test binary.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cournot {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::vector<int> criteria;         // empty: all
  std::optional<std::string> model;  // restrict to checks involving this model
  std::string out_dir;               // figures for criterion 9; empty: system temp dir
};

// "LL" selects a model; "4" or "1,3,9" select criteria.
AcceptanceOptions parse_only(const std::string& filter);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

// One "PASS|FAIL <id> <title>" line per criterion, details indented below.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace cournot
