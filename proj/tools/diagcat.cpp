#include <iostream>
#include <string>
#include <vector>

#include "diagcat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return diagcat::run(std::move(args), std::cout, std::cerr);
}
