#include <iostream>
#include <string>
#include <vector>

#include "clustertess/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return ctess::cli::run_cli(args, std::cin, std::cout, std::cerr);
}
