#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace il::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDistinguished = 1;  // also: analysis rejected
inline constexpr int kExhausted = 2;      // also: parse error
inline constexpr int kUsage = 64;
inline constexpr int kNoInput = 66;

/// Entry point of the `il` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace il::cli
