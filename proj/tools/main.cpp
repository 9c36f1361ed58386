#include <iostream>

#include "ionqaoa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ionqaoa::cli::run(args, std::cout, std::cerr);
}
