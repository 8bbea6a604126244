#include <iostream>
#include <string>
#include <vector>

#include "qcos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qcos::cli::main(args, std::cout, std::cerr);
}
