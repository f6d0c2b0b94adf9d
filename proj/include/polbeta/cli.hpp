#pragma once

// Command-line frontend. `run` is the whole program minus process plumbing so
// tests can drive it in-process.

#include <ostream>
#include <string>
#include <vector>

namespace polbeta::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 2,
  exit_oracle = 3,
  exit_no_certificate = 4,
};

/// `args` excludes the program name. Output goes to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polbeta::cli
