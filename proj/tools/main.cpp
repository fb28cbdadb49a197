#include <iostream>
#include <string>
#include <vector>

#include "lqdg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lqdg::cli::run(args, std::cout, std::cerr);
}
