#include <iostream>
#include <string>
#include <vector>

#include "kneser/experiment.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kneser::run_cli(args, std::cout, std::cerr);
}
