#include <iostream>

#include "cohloop/cli.hpp"

int main(int argc, char** argv) {
  return cohloop::run_cli(argc, argv, std::cout, std::cerr);
}
