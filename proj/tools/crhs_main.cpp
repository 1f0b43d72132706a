#include <iostream>
#include <string>
#include <vector>

#include "crhs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crhs::run_cli(args, std::cout, std::cerr);
}
