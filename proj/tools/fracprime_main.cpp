#include <iostream>

#include "fracprime/cli.hpp"

int main(int argc, char** argv) {
  return fracprime::run_cli(argc, argv, std::cout, std::cerr);
}
