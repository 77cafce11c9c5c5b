#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oscprop {

enum class Verdict { pass, fail, informational };

const char* to_string(Verdict v);

/// One line of the verification ledger.
/// Invariant: verdict == pass iff metric <= tolerance, unless informational.
struct VerificationReport {
    std::string check_name;
    double metric = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::informational;
    std::string notes;

    bool failed() const { return verdict == Verdict::fail; }
};

VerificationReport make_check(std::string name, double metric, double tolerance, std::string notes = {});
VerificationReport make_informational(std::string name, double metric, std::string notes = {});

/// Header `check,metric,tolerance,verdict,notes`.
void write_report_header(std::ostream& os);
void write_report_line(std::ostream& os, const VerificationReport& r);

}  // namespace oscprop
