#include <iostream>
#include <string>
#include <vector>

#include "zbases/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zbases::cli::run(args, std::cout, std::cerr);
}
