#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbounce::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerify = 3;

// Runs one command line (without the program name). Tables and JSON go to
// `out` unless --out names a file; usage text, warnings and errors go to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace qbounce::cli
