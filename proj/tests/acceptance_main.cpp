#include <iostream>

#include "cournot/acceptance.hpp"

int main() {
  auto results = cournot::run_acceptance({});
  cournot::print_results(std::cout, results);
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return 0;
}
