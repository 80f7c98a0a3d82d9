#include <iostream>
#include <string>
#include <vector>

#include "pmsched/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pmsched::cli::run(args, std::cout, std::cerr);
}
