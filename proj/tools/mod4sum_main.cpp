#include <iostream>
#include <string>
#include <vector>

#include "mod4sum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mod4sum::dispatch(std::move(args), std::cout, std::cerr);
}
