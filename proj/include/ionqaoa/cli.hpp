#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ionqaoa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

// Flat `key=value` lines; '#' starts a comment. Throws kParse on bad lines.
std::map<std::string, std::string> parse_config(const std::string& text);

// Runs one subcommand. `args` excludes the program name. CSV goes to the
// --out path when given, to `out` otherwise; the summary line goes to `out`
// (or `err` when the CSV already went to `out`). Errors are reported on
// `err` as `error: category=<kind> message=<text>`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version_string();

}  // namespace ionqaoa::cli
