#include <string>
#include <vector>

#include "dd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dd::run_cli(std::move(args));
}
