#include <iostream>

#include "lctrs_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lctrs::cli::cli_main(args, std::cout, std::cerr);
}
