#include <iostream>
#include <string>
#include <vector>

#include "gardner5/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gardner5::run_cli(args, std::cout, std::cerr);
}
