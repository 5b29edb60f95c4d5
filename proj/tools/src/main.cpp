#include <iostream>

#include "phgc/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phgc::run(args, std::cout, std::cerr);
}
