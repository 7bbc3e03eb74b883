#include "dicke2/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return dicke2::cli::run(argc, argv, std::cout, std::cerr);
}
