#include <iostream>

#include "koszul/cli.hpp"

int main(int argc, char** argv) {
  return koszul::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
