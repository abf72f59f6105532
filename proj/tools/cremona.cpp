#include <iostream>

#include "cremona/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cremona::run_cli(args, std::cout, std::cerr);
}
