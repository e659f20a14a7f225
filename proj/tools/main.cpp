#include <iostream>

#include "cournot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cournot::run_cli(args, std::cout, std::cerr);
}
