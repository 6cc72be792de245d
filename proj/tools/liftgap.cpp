#include <iostream>

#include "acceptance_suite.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return liftgap::cli::run_cli(args, std::cout, std::cerr,
                               [](std::ostream& out) { return liftgap::acceptance::run_all(out).all_pass(); });
}
