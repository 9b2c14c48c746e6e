#include <iostream>
#include <string>
#include <vector>

#include "eqloc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return eqloc::cli::run(args, std::cout, std::cerr);
}
