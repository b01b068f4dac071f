#include <iostream>
#include <string>
#include <vector>

#include "qir/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qir::cli::run(args, std::cin, std::cout, std::cerr);
}
