#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

auto main(int argc, char** argv) -> int {
  return combs::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
