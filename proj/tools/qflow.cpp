#include <iostream>
#include <string>
#include <vector>

#include "qflow/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return qflow::cli::run(args, std::cout, std::cerr);
}
