#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace horn {

/// Exit statuses of the command-line front end.
namespace exit_status {
inline constexpr int single_head = 0;
inline constexpr int not_single_head = 1;
inline constexpr int inconclusive = 2;
inline constexpr int usage = 64;
inline constexpr int mismatch = 70;  // oracle disagreement or unmet `% expect`
}  // namespace exit_status

/// Runs the tool on `args` (program name excluded). Results go to `out`,
/// diagnostics to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace horn
