#include <iostream>

#include "stoplat/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stoplat::cli::run(args, std::cout, std::cerr);
}
