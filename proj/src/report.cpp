#include "oscprop/report.hpp"

#include <iomanip>
#include <ostream>

namespace oscprop {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::informational: return "informational";
    }
    return "informational";
}

VerificationReport make_check(std::string name, double metric, double tolerance, std::string notes) {
    VerificationReport r;
    r.check_name = std::move(name);
    r.metric = metric;
    r.tolerance = tolerance;
    // NaN metrics fail.
    r.verdict = (metric <= tolerance) ? Verdict::pass : Verdict::fail;
    r.notes = std::move(notes);
    return r;
}

VerificationReport make_informational(std::string name, double metric, std::string notes) {
    VerificationReport r;
    r.check_name = std::move(name);
    r.metric = metric;
    r.tolerance = 0.0;
    r.verdict = Verdict::informational;
    r.notes = std::move(notes);
    return r;
}

void write_report_header(std::ostream& os) { os << "check,metric,tolerance,verdict,notes\n"; }

void write_report_line(std::ostream& os, const VerificationReport& r) {
    std::string notes = r.notes;
    for (auto& ch : notes) {
        if (ch == ',' || ch == '\n') ch = ';';
    }
    const auto flags = os.flags();
    os << r.check_name << ',' << std::setprecision(6) << std::scientific << r.metric << ',' << r.tolerance
       << ',' << to_string(r.verdict) << ',' << notes << '\n';
    os.flags(flags);
}

}  // namespace oscprop
