#include <iostream>

#include "irrtopo/cli.hpp"

int main(int argc, char** argv) {
  return irrtopo::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
