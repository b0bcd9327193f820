#include <iostream>
#include <string>
#include <vector>

#include "sp6/cli_io.hpp"

int main(int argc, char** argv) {
  return sp6::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
