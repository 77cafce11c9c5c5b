#include "oscprop/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscprop/numerics.hpp"

namespace oscprop {

namespace {

void check_args(int n, double a) {
    if (n < 0 || n > kMaxHermiteIndex) throw PreconditionError("Hermite index must lie in [0, 256]");
    if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("oscillator coupling a must be positive");
}

}  // namespace

std::vector<double> hermite_fns(int N, double a, double x) {
    check_args(N, a);
    if (!std::isfinite(x)) throw PreconditionError("non-finite Hermite argument");
    const double y = std::sqrt(a) * x;
    std::vector<double> out(static_cast<std::size_t>(N) + 1);

    // Run the recurrence on psi_n * exp(y^2/2) / (a/pi)^{1/4}, carrying a log scale.
    double log_scale = -0.5 * y * y + 0.25 * std::log(a / std::numbers::pi);
    double prev = 0.0;
    double cur = 1.0;
    std::vector<double> raw(out.size());
    std::vector<double> logs(out.size());
    raw[0] = cur;
    logs[0] = log_scale;
    for (int k = 0; k < N; ++k) {
        const double next = (k == 0) ? std::sqrt(2.0) * y * cur
                                     : std::sqrt(2.0 / (k + 1)) * y * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e150) {
            prev *= 1e-150;
            cur *= 1e-150;
            log_scale += 150.0 * std::numbers::ln10;
        }
        raw[k + 1] = cur;
        logs[k + 1] = log_scale;
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = raw[k] == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(raw[k])) + logs[k]), raw[k]);
    }
    return out;
}

double hermite_fn(int n, double a, double x) { return hermite_fns(n, a, x).back(); }

SampledFunction hermite_sampled(int n, double a, const Grid1D& grid) {
    return SampledFunction::sample(grid, [&](double x) { return hermite_fn(n, a, x); });
}

double SpectralCoefficients::tail() const {
    double peak = 0.0;
    for (const auto& c : coeffs) peak = std::max(peak, std::abs(c));
    return peak == 0.0 ? 0.0 : std::abs(coeffs.back()) / peak;
}

namespace {

// Row j holds h_0..h_N at x_j.
std::vector<std::vector<double>> basis_table(const Grid1D& grid, double a, int N) {
    std::vector<std::vector<double>> table(grid.n());
    for (std::size_t j = 0; j < grid.n(); ++j) table[j] = hermite_fns(N, a, grid.point(j));
    return table;
}

}  // namespace

SpectralCoefficients expand(const SampledFunction& f, double a, int N, Diagnostics* diag) {
    check_args(N, a);
    const auto w = quadrature_weights(f.grid());
    const auto table = basis_table(f.grid(), a, N);
    SpectralCoefficients c{a, f.grid(), std::vector<complex>(static_cast<std::size_t>(N) + 1)};
    for (std::size_t j = 0; j < f.size(); ++j) {
        const complex fw = w[j] * f[j];
        for (int k = 0; k <= N; ++k) c.coeffs[k] += fw * table[j][k];
    }
    if (c.tail() > 1e-6) warn(diag, "expand: truncation tail |c_N| / max |c_n| exceeds 1e-6");
    return c;
}

SampledFunction synthesize(const SpectralCoefficients& c, const std::vector<double>& multiplier) {
    if (multiplier.size() != c.coeffs.size()) throw PreconditionError("multiplier length does not match expansion order");
    const int N = c.order();
    std::vector<complex> v(c.grid.n());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const auto h = hermite_fns(N, c.a, c.grid.point(j));
        complex s(0.0);
        for (int k = 0; k <= N; ++k) s += multiplier[k] * c.coeffs[k] * h[k];
        v[j] = s;
    }
    return SampledFunction(c.grid, std::move(v));
}

SampledFunction reconstruct(const SpectralCoefficients& c) {
    return synthesize(c, std::vector<double>(c.coeffs.size(), 1.0));
}

SampledFunction heat_oracle(const SpectralCoefficients& c, double t) {
    std::vector<double> m(c.coeffs.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::exp(-(2.0 * static_cast<double>(k) + 1.0) * c.a * t);
    return synthesize(c, m);
}

SampledFunction wave_oracle(const SpectralCoefficients& c, double t) {
    std::vector<double> m(c.coeffs.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double omega = std::sqrt((2.0 * static_cast<double>(k) + 1.0) * c.a);
        m[k] = std::sin(t * omega) / omega;
    }
    return synthesize(c, m);
}

SampledFunction wave_oracle_velocity(const SpectralCoefficients& c, double t) {
    std::vector<double> m(c.coeffs.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::cos(t * std::sqrt((2.0 * static_cast<double>(k) + 1.0) * c.a));
    return synthesize(c, m);
}

}  // namespace oscprop
