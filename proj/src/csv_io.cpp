#include "oscprop/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace oscprop {

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw PreconditionError("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
    }
    return v;
}

// Spacing that reproduces the x column exactly when one exists within a few
// ulps of the average step.
double fit_spacing(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const double mean = (x.back() - x.front()) / static_cast<double>(n - 1);
    const double down = std::nextafter(mean, -INFINITY), up = std::nextafter(mean, INFINITY);
    double best = mean, best_err = INFINITY;
    for (double h : {mean, down, up, std::nextafter(down, -INFINITY), std::nextafter(up, INFINITY)}) {
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(x.front() + static_cast<double>(j) * h - x[j]));
        if (err < best_err) {
            best_err = err;
            best = h;
        }
    }
    return best;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

SampledFunction read_function_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split(line);
            break;
        }
    }
    const bool has_im = header == std::vector<std::string>{"x", "re", "im"};
    if (!has_im && header != std::vector<std::string>{"x", "re"}) {
        throw PreconditionError("missing header: expected 'x,re,im' or 'x,re'");
    }
    const std::size_t columns = has_im ? 3 : 2;

    std::vector<double> x;
    std::vector<complex> v;
    std::vector<std::size_t> lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != columns) {
            throw PreconditionError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " columns");
        }
        x.push_back(parse_double(fields[0], line_no));
        v.emplace_back(parse_double(fields[1], line_no), has_im ? parse_double(fields[2], line_no) : 0.0);
        lines.push_back(line_no);
    }
    if (x.size() < Grid1D::kMinPoints) {
        throw PreconditionError("need at least " + std::to_string(Grid1D::kMinPoints) + " data rows");
    }
    for (std::size_t j = 1; j < x.size(); ++j) {
        if (!(x[j] > x[j - 1])) throw PreconditionError("line " + std::to_string(lines[j]) + ": x is not strictly increasing");
    }
    const double h = fit_spacing(x);
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (std::abs(x.front() + static_cast<double>(j) * h - x[j]) > 1e-9 * h) {
            throw PreconditionError("line " + std::to_string(lines[j]) + ": x is not uniformly spaced");
        }
    }
    return SampledFunction(Grid1D::from_spacing(x.front(), h, x.size()), std::move(v));
}

SampledFunction read_function_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    return read_function_csv(in);
}

void write_function_csv(const SampledFunction& f, std::ostream& out) {
    out << "x,re,im\n";
    for (std::size_t j = 0; j < f.size(); ++j) {
        out << format_double(f.grid().point(j)) << ',' << format_double(f[j].real()) << ','
            << format_double(f[j].imag()) << '\n';
    }
}

void write_function_csv(const SampledFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write " + path);
    write_function_csv(f, out);
}

void write_kernel_csv(const Grid1D& grid, const std::function<double(double, double)>& kernel, std::ostream& out) {
    out << "x,xp,value\n";
    const auto x = grid.points();
    for (double xi : x) {
        for (double xj : x) out << format_double(xi) << ',' << format_double(xj) << ',' << format_double(kernel(xi, xj)) << '\n';
    }
}

}  // namespace oscprop
