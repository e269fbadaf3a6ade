#include <iostream>
#include <string>
#include <vector>

#include "optwin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return optwin::cli::run(args, std::cout, std::cerr);
}
