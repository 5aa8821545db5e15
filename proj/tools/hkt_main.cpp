#include <iostream>
#include <string>
#include <vector>

#include "heraklit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return heraklit::run_command(args, std::cin, std::cout, std::cerr);
}
