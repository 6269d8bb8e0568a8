#include <iostream>

#include "plb/cli.hpp"

int main(int argc, char** argv) {
  return plb::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
