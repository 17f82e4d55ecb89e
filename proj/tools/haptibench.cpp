#include <iostream>
#include <string>
#include <vector>

#include "haptibench/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return haptibench::run(args, std::cout, std::cerr);
}
