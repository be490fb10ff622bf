#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "commands.hpp"

int main(int argc, char** argv) {
  const bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO) == 1;
  std::vector<std::string> args(argv + 1, argv + argc);
  return spinphase::cli::run(args, {std::cout, std::cerr, color});
}
