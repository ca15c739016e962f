#include <iostream>
#include <string>
#include <vector>

#include "nonrecip/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return nonrecip::cli::run_command_line(args, std::cout, std::cerr);
}
