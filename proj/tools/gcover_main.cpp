#include <iostream>

#include "gcover/cli.hpp"

int main(int argc, char** argv) {
  return gcover::run_cli(argc, argv, std::cout, std::cerr);
}
