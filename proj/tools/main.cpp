#include <cstdio>
#include <string>
#include <vector>

#include "crampcert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto outcome = crampcert::runCommand(args);
  std::fputs(outcome.document.c_str(), stdout);
  return outcome.exitCode;
}
