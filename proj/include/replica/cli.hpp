#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "replica/precision.hpp"

namespace replica::cli {

enum ExitCode : int {
  kSuccess = 0,
  kArgumentError = 2,
  kNonConvergence = 3,
  kVerificationFailure = 4,
};

/// Runs one `replica` command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Truncated digits as printed in text mode: fraction digits in groups of
/// ten, five groups per line, "..." appended unless the value is exact.
/// `plain` drops the grouping.
std::string format_digits(const DecimalDigits& digits, bool plain);

/// Smallest precision the engine computes at; shorter requests are
/// computed at this size and truncated for display.
inline constexpr int kMinComputeDigits = 20;

}  // namespace replica::cli
