#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace clonopt::cli {

/// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_numeric = 1;  // numeric failure, or a failed `verify all` check
inline constexpr int exit_usage = 2;
inline constexpr int exit_guard = 3;

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail" or "skipped"
  std::string detail;
};

/// The invariant suite behind `verify all`. Checks that would exceed the dense
/// guard are reported as skipped.
std::vector<CheckResult> verify_all(int d, int n, int m, std::uint64_t seed, int samples, std::size_t guard);

} // namespace clonopt::cli
