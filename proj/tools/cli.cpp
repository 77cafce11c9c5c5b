#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "oscprop/csv_io.hpp"
#include "oscprop/dirac.hpp"
#include "oscprop/grushin.hpp"
#include "oscprop/hermite.hpp"
#include "oscprop/oscillator.hpp"
#include "oscprop/verify.hpp"

namespace oscprop::cli {

namespace {

constexpr int kOracleModes = 64;

struct RunConfig {
    double a = 1.0;
    double t = 0.0;
    std::string grid = "-12,12,1024";
    std::string variant;
    std::string route;
    std::string input_path;
    std::string output_path;
    std::string suite = "all";
    std::string point;
};

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* what) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double d = 0.0;
        const auto* end = item.data() + item.size();
        const auto [ptr, ec] = std::from_chars(item.data(), end, d);
        if (ec != std::errc() || ptr != end) throw PreconditionError(std::string(what) + ": cannot parse '" + item + "'");
        v.push_back(d);
    }
    if (v.size() != count) throw PreconditionError(std::string(what) + ": expected " + std::to_string(count) + " comma-separated values");
    return v;
}

Grid1D parse_grid(const std::string& text) {
    const auto v = parse_list(text, 3, "--grid");
    if (v[2] != std::floor(v[2])) throw PreconditionError("--grid: n must be an integer");
    return make_grid(v[0], v[1], static_cast<std::int64_t>(v[2]));
}

HeatKernelVariant parse_variant(const std::string& s) {
    if (s == "mehler") return HeatKernelVariant::mehler;
    if (s == "paper_literal") return HeatKernelVariant::paper_literal;
    return HeatKernelVariant::paper_corrected;
}

SampledFunction load_input(const RunConfig& c, const std::function<double(double)>& fallback) {
    if (!c.input_path.empty()) return read_function_csv(c.input_path);
    return SampledFunction::sample(parse_grid(c.grid), fallback);
}

void report_warnings(const Diagnostics& diag, std::ostream& err) {
    for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
}

template <class Writer>
void emit(const RunConfig& c, std::ostream& out, Writer&& write) {
    if (c.output_path.empty()) {
        write(out);
        return;
    }
    std::ofstream f(c.output_path);
    if (!f) throw PreconditionError("cannot open '" + c.output_path + "' for writing");
    write(f);
    if (!f) throw PreconditionError("write to '" + c.output_path + "' failed");
}

void emit_function(const RunConfig& c, const SampledFunction& f, std::ostream& out) {
    emit(c, out, [&](std::ostream& os) { write_function_csv(f, os); });
}

SampledFunction oscillator_default(const RunConfig& c) {
    return load_input(c, [a = c.a](double x) { return hermite_fn(0, a, x) + hermite_fn(1, a, x); });
}

SampledFunction dirac_default(const RunConfig& c) {
    return load_input(c, [](double x) { return std::exp(-x * x); });
}

int heat_ho(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto u0 = oscillator_default(c);
    const OscillatorParams p{c.a, c.t};
    Diagnostics diag;
    SampledFunction u(u0.grid());
    if (c.route == "kernel") u = heat_ho_kernel_route(u0, p, parse_variant(c.variant), &diag);
    else if (c.route == "spectral") u = heat_ho_spectral_route(u0, p, &diag);
    else if (c.route == "intertwine") u = heat_via_intertwining(u0, p, &diag);
    else u = heat_oracle(expand(u0, c.a, kOracleModes, &diag), c.t);
    report_warnings(diag, err);
    emit_function(c, u, out);
    return kExitOk;
}

int wave_ho_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto v0 = oscillator_default(c);
    Diagnostics diag;
    SampledFunction v(v0.grid());
    if (c.route == "oracle") {
        v = wave_oracle(expand(v0, c.a, kOracleModes, &diag), c.t);
    } else {
        const auto form = c.variant == "paper_literal" ? WaveForm::paper_literal : WaveForm::corrected;
        v = wave_ho(v0, {c.a, c.t}, form, &diag);
    }
    report_warnings(diag, err);
    emit_function(c, v, out);
    return kExitOk;
}

int heat_dirac_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Diagnostics diag;
    const auto U = heat_dirac(dirac_default(c), c.t, &diag);
    report_warnings(diag, err);
    emit_function(c, U, out);
    return kExitOk;
}

int wave_dirac_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto V0 = dirac_default(c);
    Diagnostics diag;
    const auto V = c.route == "oracle" ? spectral_wave_oracle_dirac(V0, c.t, &diag) : wave_dirac(V0, c.t, &diag);
    report_warnings(diag, err);
    emit_function(c, V, out);
    return kExitOk;
}

int kernel_cmd(const RunConfig& c, std::ostream& out) {
    const auto grid = parse_grid(c.grid);
    const auto variant = parse_variant(c.variant);
    const OscillatorParams p{c.a, c.t};
    (void)heat_kernel(variant, p, 0.0, 0.0);
    emit(c, out, [&](std::ostream& os) {
        write_kernel_csv(grid, [&](double x, double xp) { return heat_kernel(variant, p, x, xp); }, os);
    });
    return kExitOk;
}

int grushin_cmd(const RunConfig& c, std::ostream& out) {
    const auto v = parse_list(c.point, 4, "--point");
    const GrushinPoint p{v[0], v[1], v[2], v[3], c.t};
    const complex k = grushin_heat_kernel_converged(p, suggest_a_max(p));
    emit(c, out, [&](std::ostream& os) {
        os << "t,x,y,xp,yp,re,im\n";
        for (double d : {p.t, p.x, p.y, p.xp, p.yp, k.real()}) os << format_double(d) << ',';
        os << format_double(k.imag()) << '\n';
    });
    return kExitOk;
}

int verify_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto reports = run_verification(c.suite);
    int code = kExitOk;
    emit(c, out, [&](std::ostream& os) { code = write_verification(reports, os, err); });
    return code;
}

}  // namespace

int write_verification(const std::vector<VerificationReport>& reports, std::ostream& report, std::ostream& err) {
    write_report_header(report);
    for (const auto& r : reports) write_report_line(report, r);
    std::size_t failed = 0;
    for (const auto& r : reports) {
        if (r.failed()) {
            ++failed;
            err << "FAIL " << r.check_name << ": " << r.metric << " > " << r.tolerance << '\n';
        }
    }
    err << reports.size() << " checks, " << failed << " failed\n";
    return failed > 0 ? kExitCheckFailed : kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heat and wave propagators for the oscillator and d/dX, with verification suites", "oscprop"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_a = [&](CLI::App* s) { s->add_option("--a", c.a, "oscillator coupling a > 0")->capture_default_str(); };
    auto add_t = [&](CLI::App* s) { s->add_option("--t", c.t, "time")->required(); };
    auto add_grid = [&](CLI::App* s) {
        s->add_option("--grid", c.grid, "min,max,n (ignored with --input)")->capture_default_str();
    };
    auto add_io = [&](CLI::App* s) {
        s->add_option("--input", c.input_path, "CSV x,re[,im] initial data")->check(CLI::ExistingFile);
        s->add_option("--output", c.output_path, "output path (stdout when absent)");
    };
    auto* heat_ho_app = app.add_subcommand("heat-ho", "oscillator heat propagation");
    add_a(heat_ho_app), add_t(heat_ho_app), add_grid(heat_ho_app), add_io(heat_ho_app);
    heat_ho_app->add_option("--route", c.route, "kernel, spectral, intertwine or oracle")
        ->check(CLI::IsMember({"kernel", "spectral", "intertwine", "oracle"}));
    heat_ho_app->add_option("--variant", c.variant, "kernel route: mehler, paper_corrected or paper_literal")
        ->check(CLI::IsMember({"mehler", "paper_corrected", "paper_literal"}));

    auto* wave_ho_app = app.add_subcommand("wave-ho", "oscillator wave propagation (v(0) = 0, v_t(0) = input)");
    add_a(wave_ho_app), add_t(wave_ho_app), add_grid(wave_ho_app), add_io(wave_ho_app);
    wave_ho_app->add_option("--route", c.route, "kernel (closed form) or oracle (hermite)")
        ->check(CLI::IsMember({"kernel", "oracle"}));
    wave_ho_app->add_option("--variant", c.variant, "paper_corrected or paper_literal")
        ->check(CLI::IsMember({"paper_corrected", "paper_literal"}));

    auto* heat_dirac_app = app.add_subcommand("heat-dirac", "transport U(t, X) = U0(X + t)");
    add_t(heat_dirac_app), add_grid(heat_dirac_app), add_io(heat_dirac_app);

    auto* wave_dirac_app = app.add_subcommand("wave-dirac", "wave equation for d/dX (V(0) = 0, V_t(0) = input)");
    add_t(wave_dirac_app), add_grid(wave_dirac_app), add_io(wave_dirac_app);
    wave_dirac_app->add_option("--route", c.route, "kernel (window integral) or oracle (spectral)")
        ->check(CLI::IsMember({"kernel", "oracle"}));

    auto* kernel_app = app.add_subcommand("kernel", "dump K(t, x, x') on grid x grid");
    add_a(kernel_app), add_t(kernel_app), add_grid(kernel_app);
    kernel_app->add_option("--variant", c.variant, "mehler, paper_corrected or paper_literal")
        ->check(CLI::IsMember({"mehler", "paper_corrected", "paper_literal"}));
    kernel_app->add_option("--output", c.output_path, "output path (stdout when absent)");

    auto* grushin_app = app.add_subcommand("grushin-heat", "Grushin heat kernel at one pair of points");
    add_t(grushin_app);
    grushin_app->add_option("--point", c.point, "x,y,xp,yp")->required();
    grushin_app->add_option("--output", c.output_path, "output path (stdout when absent)");

    auto* verify_app = app.add_subcommand("verify", "run verification suites and write the report");
    std::vector<std::string> suites{"all"};
    for (const auto& s : verification_suites()) suites.push_back(s.name);
    verify_app->add_option("--suite", c.suite, "suite name or all")->check(CLI::IsMember(suites))->capture_default_str();
    verify_app->add_option("--output", c.output_path, "report path (stdout when absent)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitPrecondition;
    }

    auto set_default = [](std::string& field, const char* value) {
        if (field.empty()) field = value;
    };
    try {
        if (heat_ho_app->parsed()) {
            set_default(c.route, "kernel"), set_default(c.variant, "mehler");
            return heat_ho(c, out, err);
        }
        if (wave_ho_app->parsed()) {
            set_default(c.route, "kernel"), set_default(c.variant, "paper_corrected");
            return wave_ho_cmd(c, out, err);
        }
        if (heat_dirac_app->parsed()) return heat_dirac_cmd(c, out, err);
        if (wave_dirac_app->parsed()) {
            set_default(c.route, "kernel");
            return wave_dirac_cmd(c, out, err);
        }
        if (kernel_app->parsed()) {
            set_default(c.variant, "mehler");
            return kernel_cmd(c, out);
        }
        if (grushin_app->parsed()) return grushin_cmd(c, out);
        return verify_cmd(c, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    }
}

}  // namespace oscprop::cli
