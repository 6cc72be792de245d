#include <iostream>

#include "acceptance_suite.hpp"

int main() { return liftgap::acceptance::run_all(std::cout).all_pass() ? 0 : 1; }
