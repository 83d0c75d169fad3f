#pragma once

#include <iosfwd>

namespace genusforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUsage = 64;

/// Subcommands construct, verify, table, polygon and bench. Errors go to
/// `err` as "error: <Id>: <message>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genusforge
