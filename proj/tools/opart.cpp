#include <iostream>

#include "opart_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return opart::cli::run(std::move(args), std::cout, std::cerr);
}
