#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sric {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `sric` binary. `args` excludes the program name.
/// Machine-readable JSON goes to `out`, human-readable messages to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sric
