#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oscprop/report.hpp"

namespace oscprop {

struct VerificationSuite {
    std::string name;
    std::string summary;
    std::vector<VerificationReport> (*run)();
};

/// The registered suites, in report order.
const std::vector<VerificationSuite>& verification_suites();

/// Runs one suite by name, or every suite for "all". Check names are
/// prefixed with the suite name. Throws PreconditionError for unknown names.
std::vector<VerificationReport> run_verification(std::string_view suite);

bool any_failed(const std::vector<VerificationReport>& reports);

}  // namespace oscprop
