#include <iostream>
#include <string>
#include <vector>

#include "proportia/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return proportia::run_cli(args, std::cout, std::cerr);
}
