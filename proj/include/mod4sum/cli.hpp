#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mod4sum {

inline constexpr std::string_view kToolName = "mod4sum";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Runs one subcommand. Writes the JSON report to `out`, a one-line human
// summary (or the error) to `err`. Exit codes: 0 success, 2 bad arguments,
// 3 resource-guard refusal, 1 internal inconsistency.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mod4sum
