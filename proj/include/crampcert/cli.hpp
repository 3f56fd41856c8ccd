#pragma once

#include <string>
#include <vector>

namespace crampcert {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit-code contract: 0 success, 1 input error, 2 inconclusive,
// 3 hypothesis not applicable.
struct RunOutcome {
  int exitCode = 0;
  std::string document;  // emitted verbatim on stdout
};

// args excludes the program name, e.g. {"certify", "--pair", "diagonal:A1"}.
RunOutcome runCommand(const std::vector<std::string>& args);

}  // namespace crampcert
