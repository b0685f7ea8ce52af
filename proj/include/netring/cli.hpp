#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "netring/json_io.hpp"

namespace netring {

inline constexpr const char* kVersion = "0.1.0";

namespace exit_code {
inline constexpr int kSolved = 0;
inline constexpr int kUnsolved = 1;
inline constexpr int kBudget = 2;
inline constexpr int kUsage = 64;
inline constexpr int kDomain = 65;
}  // namespace exit_code

/// Runs the command line `args` (without the program name). JSON results go to
/// `out`, diagnostics to `err`, and "-" file arguments read `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Digest of a command result with run-dependent fields ("stats", "seconds") removed.
std::string result_digest(const Json& result);

}  // namespace netring
