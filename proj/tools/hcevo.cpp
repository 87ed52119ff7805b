#include <iostream>
#include <string>
#include <vector>

#include "hcevo/harness/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hcevo::harness::run_cli(args, std::cout);
}
