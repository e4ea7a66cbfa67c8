#include <iostream>

#include "frobdyn/cli.hpp"

int main(int argc, char** argv) {
  return frobdyn::run_cli(argc, argv, std::cout, std::cerr);
}
