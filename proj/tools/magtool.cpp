#include <iostream>
#include <string>
#include <vector>

#include "magtool_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return magtool::run_magtool(std::move(args), std::cout, std::cerr);
}
