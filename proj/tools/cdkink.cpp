#include <iostream>
#include <string>
#include <vector>

#include "cdkink/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cdkink::cli::run_cli(args, std::cout, std::cerr);
}
