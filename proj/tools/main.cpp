#include <string>
#include <vector>

#include "pdlimits/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pdl::cli::run(args);
}
