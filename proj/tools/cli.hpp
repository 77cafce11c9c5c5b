#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oscprop/report.hpp"

namespace oscprop::cli {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 1;
constexpr int kExitCheckFailed = 2;

/// Writes the report and a failure summary; kExitCheckFailed iff any check failed.
int write_verification(const std::vector<VerificationReport>& reports, std::ostream& report, std::ostream& err);

/// Parses `args` (without the program name) and runs the subcommand.
/// Output files go to --output, or to `out` when it is absent; warnings
/// and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oscprop::cli
