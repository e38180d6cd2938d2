#pragma once

// Command-line front end.  Kept as a library function so tests can drive
// the full argument-parsing and output path in-process.
//
// Exit codes: 0 success; 1 usage or input error; 2 verification failure
// (a suite reported counterexamples, a cross-checked computation disagreed
// with its reference, or an internal exact identity broke); 3 a scan or
// matrix exceeded its visit budget.

#include <iosfwd>
#include <string>
#include <vector>

namespace delins {

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace delins
