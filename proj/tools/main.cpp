#include <iostream>

#include "stabb/cli.hpp"

int main(int argc, char** argv) {
  return stabb::main_impl(argc, argv, std::cout, std::cerr);
}
