#pragma once

#include <iosfwd>

namespace gcover {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Subcommands solve, oracle, verify, gap, gen, batch. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace gcover
