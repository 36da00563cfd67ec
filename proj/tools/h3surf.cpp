#include <iostream>
#include <string>
#include <vector>

#include "h3surf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return h3surf::run(args, std::cout, std::cerr);
}
