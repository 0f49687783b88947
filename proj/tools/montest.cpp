#include <iostream>
#include <string>
#include <vector>

#include "montest/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return montest::cli::run(args, std::cout, std::cerr);
}
