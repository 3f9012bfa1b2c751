#include <cstdlib>
#include <iostream>

#include "toric_mirror/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> order;
  if (const char* env = std::getenv("ORDER")) order = env;
  return toric::cli::run(args, std::cout, std::cerr, order);
}
