#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace siggm::cli {

/// Exit codes: 0 success, 1 internal or convergence failure, 2 input error.
enum ExitCode : int { kOk = 0, kInternal = 1, kInput = 2 };

/// Entry point of the `siggm` executable; streams are injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace siggm::cli
