#include <iostream>
#include <string>
#include <vector>

#include "leetor/cli.hpp"

static const char* const kBundledTable =
#include "bundled_knots.inc"
    ;

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  const leetor::cli::Environment env{std::cout, std::cerr, kBundledTable};
  return leetor::cli::run(args, env);
}
