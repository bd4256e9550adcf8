#include <iostream>
#include <string>
#include <vector>

#include "fetip/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fetip::cli::run(args, std::cout, std::cerr);
}
