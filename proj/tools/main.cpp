#include <iostream>

#include "oddtax/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return oddtax::run_cli(args, std::cin, std::cout, std::cerr);
}
