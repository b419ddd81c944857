#include <iostream>
#include <string>
#include <vector>

#include "cloakforge/dsl.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cloakforge::dsl::run_command(args, std::cout, std::cerr);
}
