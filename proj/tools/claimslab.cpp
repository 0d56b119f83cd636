#include <iostream>
#include <string>
#include <vector>

#include "claimslab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return claimslab::cli::run(args, std::cout, std::cerr);
}
