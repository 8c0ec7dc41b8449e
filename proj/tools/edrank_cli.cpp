#include <iostream>

#include "edrank/cli.hpp"

int main(int argc, char** argv) {
  return edrank::cli_main(argc, argv, std::cout, std::cerr);
}
