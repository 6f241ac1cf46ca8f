#include <iostream>

#include "kks/cli.hpp"

int main(int argc, char** argv) {
  return kks::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
