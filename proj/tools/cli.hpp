#pragma once

#include <iosfwd>

namespace autoseq::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kContractViolation = 1;
inline constexpr int kInputError = 2;

// Runs the command line; output goes to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace autoseq::cli
