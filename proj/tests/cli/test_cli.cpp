#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "doctest.h"
#include "oscprop/csv_io.hpp"

using namespace oscprop;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("cli kernel dump") {
    const auto r = run({"kernel", "--variant", "mehler", "--a", "1", "--t", "0.3", "--grid", "-6,6,256"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l.size() == 256 * 256 + 1);
    CHECK(l.front() == "x,xp,value");
    REQUIRE(l[1].rfind("-6,-6,", 0) == 0);
    const double expected = std::sqrt(1.0 / (2 * std::numbers::pi * std::sinh(0.6))) *
                            std::exp(-36.0 * std::cosh(0.6) / std::sinh(0.6) + 36.0 / std::sinh(0.6));
    CHECK(std::stod(l[1].substr(6)) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(l[257].rfind("-5.953125,-6,", 0) == 0);
}

TEST_CASE("cli heat-dirac shifts the input file") {
    const auto g = make_grid(-16.0, 16.0, 512);
    const auto input = temp_path("oscprop_cli_gaussian.csv");
    const auto output = temp_path("oscprop_cli_shifted.csv");
    write_function_csv(SampledFunction::sample(g, [](double x) { return std::exp(-x * x); }), input.string());
    const auto r = run({"heat-dirac", "--t", "1", "--input", input.string(), "--output", output.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto U = read_function_csv(output.string());
    const auto shifted = SampledFunction::sample(g, [](double x) { return std::exp(-(x + 1) * (x + 1)); });
    CHECK(relative_sup_error(U, shifted) <= 1e-10);
    std::filesystem::remove(input);
    std::filesystem::remove(output);
}

TEST_CASE("cli propagators on default data") {
    for (const char* route : {"kernel", "spectral", "intertwine", "oracle"}) {
        const auto r = run({"heat-ho", "--a", "1", "--t", "0.2", "--route", route});
        CHECK(r.code == 0);
        CHECK(lines(r.out).size() == 1025);
    }
    CHECK(run({"wave-ho", "--t", "0.01"}).code == 0);
    CHECK(run({"wave-ho", "--t", "0.01", "--route", "oracle"}).code == 0);
    CHECK(run({"wave-ho", "--t", "0.01", "--variant", "paper_literal"}).code == 0);
    CHECK(run({"wave-dirac", "--t", "0.5"}).code == 0);
    CHECK(run({"wave-dirac", "--t", "0.5", "--route", "oracle"}).code == 0);
    // Same config, same bytes.
    CHECK(run({"heat-ho", "--t", "0.3", "--route", "intertwine"}).out == run({"heat-ho", "--t", "0.3", "--route", "intertwine"}).out);
}

TEST_CASE("cli grushin-heat") {
    const auto r = run({"grushin-heat", "--t", "0.5", "--point", "0.3,0.7,-0.2,0.1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "t,x,y,xp,yp,re,im");
    CHECK(l[1].rfind("0.5,0.29999999999999999,0.69999999999999996,-0.20000000000000001,0.10000000000000001,0.0936", 0) == 0);
}

TEST_CASE("cli verify report") {
    const auto r = run({"verify", "--suite", "heat-kernel"});
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() > 2);
    CHECK(l.front() == "check,metric,tolerance,verdict,notes");
    bool literal_informational = false;
    for (const auto& line : l) {
        if (line.rfind("heat-kernel.literal_vs_mehler", 0) == 0) literal_informational = line.find(",informational,") != std::string::npos;
        CHECK(line.find(",fail,") == std::string::npos);
    }
    CHECK(literal_informational);
    CHECK(r.err.find("0 failed") != std::string::npos);
}

TEST_CASE("verify exits with 2 iff a pass-check fails") {
    std::ostringstream report, err;
    const std::vector<VerificationReport> ok{make_check("a", 1e-9, 1e-8), make_informational("b", 1e30)};
    CHECK(cli::write_verification(ok, report, err) == cli::kExitOk);
    auto failing = ok;
    failing.push_back(make_check("c", 1e-3, 1e-8, "too big"));
    CHECK(cli::write_verification(failing, report, err) == cli::kExitCheckFailed);
    CHECK(err.str().find("FAIL c") != std::string::npos);
    const auto l = lines(report.str());
    CHECK(l.back() == "c,1.000000e-03,1.000000e-08,fail,too big");
}

TEST_CASE("cli exit codes for bad configs") {
    CHECK(run({}).code == 1);
    CHECK(run({"kernel", "--t", "0.3", "--grid", "-6,6"}).code == 1);
    CHECK(run({"kernel", "--t", "0.3", "--grid", "6,-6,64"}).code == 1);
    CHECK(run({"kernel", "--a", "0", "--t", "0.3"}).code == 1);
    CHECK(run({"kernel", "--a", "1"}).code == 1);
    CHECK(run({"heat-ho", "--t", "0.3", "--route", "teleport"}).code == 1);
    CHECK(run({"heat-ho", "--t", "0.3", "--input", "/nonexistent/file.csv"}).code == 1);
    CHECK(run({"verify", "--suite", "nonsense"}).code == 1);
    CHECK(run({"heat-ho", "--t", "0.05", "--variant", "paper_literal"}).code == 1);
    const auto r = run({"wave-dirac", "--t", "40"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
}
