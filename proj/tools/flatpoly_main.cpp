#include <vector>

#include "flatpoly/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return flatpoly::run_cli(args);
}
