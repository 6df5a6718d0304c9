#include <iostream>
#include <string>
#include <vector>

#include "conepos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return conepos::cli::run(std::move(args), std::cout, std::cerr);
}
