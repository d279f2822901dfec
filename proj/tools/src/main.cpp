#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "mereo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  const bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO);
  return mereo::main_entry(args, std::cout, std::cerr, color);
}
