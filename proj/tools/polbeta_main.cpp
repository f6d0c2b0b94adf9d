#include <iostream>

#include "polbeta/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polbeta::cli::run(args, std::cout, std::cerr);
}
