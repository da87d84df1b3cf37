#include <iostream>
#include <string>
#include <vector>

#include "formint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return formint::cli::run(args, std::cout, std::cerr);
}
