#include "oscprop/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace oscprop {

namespace {

// Closed-panel weights for points 0..m (m intervals, step h).
std::vector<double> closed_weights(std::size_t m, double h) {
    std::vector<double> c(m + 1, 0.0);
    if (m == 1) {
        c[0] = c[1] = 0.5 * h;
        return c;
    }
    const bool odd = (m % 2) == 1;
    const std::size_t simpson_end = odd ? m - 3 : m;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        c[i] += h / 3.0;
        c[i + 1] += 4.0 * h / 3.0;
        c[i + 2] += h / 3.0;
    }
    if (odd) {
        const std::size_t k = m - 3;
        c[k] += 3.0 * h / 8.0;
        c[k + 1] += 9.0 * h / 8.0;
        c[k + 2] += 9.0 * h / 8.0;
        c[k + 3] += 3.0 * h / 8.0;
    }
    return c;
}

}  // namespace

std::vector<double> quadrature_weights(const Grid1D& grid) {
    const std::size_t n = grid.n();
    auto c = closed_weights(n, grid.spacing());
    std::vector<double> w(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
    // f(x_max) ~ 4 f_{n-1} - 6 f_{n-2} + 4 f_{n-3} - f_{n-4}
    const double end = c[n];
    w[n - 1] += 4.0 * end;
    w[n - 2] -= 6.0 * end;
    w[n - 3] += 4.0 * end;
    w[n - 4] -= end;
    return w;
}

complex quadrature(const SampledFunction& f) {
    const auto w = quadrature_weights(f.grid());
    complex s(0.0);
    for (std::size_t j = 0; j < f.size(); ++j) s += w[j] * f[j];
    return s;
}

complex simpson_closed(std::span<const complex> values, double h) {
    if (values.size() < 2) throw PreconditionError("simpson_closed needs at least 2 samples");
    const auto c = closed_weights(values.size() - 1, h);
    complex s(0.0);
    for (std::size_t j = 0; j < values.size(); ++j) s += c[j] * values[j];
    return s;
}

complex lagrange_interpolate(const SampledFunction& f, double x, int order, OutOfRange policy) {
    const auto& g = f.grid();
    const auto n = static_cast<std::ptrdiff_t>(g.n());
    if (order < 2 || order > n) throw PreconditionError("interpolation order out of range");
    const double q = (x - g.x_min()) / g.spacing();
    constexpr double slack = 1e-9;
    if (q < -slack || q > static_cast<double>(n - 1) + slack) {
        if (policy == OutOfRange::clamp_stencil) return complex(0.0);
        if (q < -order || q > static_cast<double>(n - 1 + order)) return complex(0.0);
    }

    std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(q)) - (order / 2 - 1);
    if (policy == OutOfRange::clamp_stencil) i0 = std::clamp<std::ptrdiff_t>(i0, 0, n - order);

    // Barycentric form with equispaced weights (-1)^k C(order-1, k).
    complex num(0.0);
    double den = 0.0;
    double binom = 1.0;
    for (int k = 0; k < order; ++k) {
        const std::ptrdiff_t idx = i0 + k;
        const double d = q - static_cast<double>(idx);
        const complex fk = (idx >= 0 && idx < n) ? f[static_cast<std::size_t>(idx)] : complex(0.0);
        if (std::abs(d) < 1e-14) return fk;
        const double wk = ((k % 2) ? -binom : binom) / d;
        num += wk * fk;
        den += wk;
        binom = binom * static_cast<double>(order - 1 - k) / static_cast<double>(k + 1);
    }
    return num / den;
}

SampledFunction interpolate_shift(const SampledFunction& f, double shift, int order, OutOfRange policy) {
    const auto& g = f.grid();
    std::vector<complex> out(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) out[j] = lagrange_interpolate(f, g.point(j) + shift, order, policy);
    return SampledFunction(g, std::move(out));
}

std::vector<complex> centered_derivative(const SampledFunction& f, int order) {
    const std::size_t n = f.size();
    const double h = f.grid().spacing();
    std::vector<complex> d(n, complex(0.0));
    if (order == 2) {
        for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
    } else if (order == 4) {
        for (std::size_t j = 2; j + 2 < n; ++j)
            d[j] = (-f[j + 2] + 8.0 * f[j + 1] - 8.0 * f[j - 1] + f[j - 2]) / (12.0 * h);
    } else if (order == 6) {
        for (std::size_t j = 3; j + 3 < n; ++j)
            d[j] = (f[j + 3] - 9.0 * f[j + 2] + 45.0 * f[j + 1] - 45.0 * f[j - 1] + 9.0 * f[j - 2] - f[j - 3]) / (60.0 * h);
    } else {
        throw PreconditionError("centered_derivative supports order 2, 4 or 6");
    }
    return d;
}

SampledFunction fd_residual(const TimeSlices& field, OperatorTag op, double /*t*/, double dt, double a) {
    if (!(dt > 0.0)) throw PreconditionError("fd_residual needs dt > 0");
    const auto& g = field.now.grid();
    if (g.n() < 16) throw PreconditionError("fd_residual needs a grid with at least 16 points");
    if (!(field.before.grid() == g) || !(field.after.grid() == g))
        throw PreconditionError("time slices live on different grids");

    const double h = g.spacing();
    const auto& um = field.before;
    const auto& u0 = field.now;
    const auto& up = field.after;
    std::vector<complex> r(g.n(), complex(0.0));
    for (std::size_t j = 1; j + 1 < g.n(); ++j) {
        complex space;
        if (op == OperatorTag::heat_ho || op == OperatorTag::wave_ho) {
            const double x = g.point(j);
            space = (u0[j + 1] - 2.0 * u0[j] + u0[j - 1]) / (h * h) - a * a * x * x * u0[j];
        } else {
            space = (u0[j + 1] - u0[j - 1]) / (2.0 * h);
        }
        complex time;
        if (op == OperatorTag::heat_ho || op == OperatorTag::heat_dirac) {
            time = (up[j] - um[j]) / (2.0 * dt);
        } else {
            time = (up[j] - 2.0 * u0[j] + um[j]) / (dt * dt);
        }
        r[j] = time - space;
    }
    return SampledFunction(g, std::move(r));
}

double sup_norm_within(const SampledFunction& f, double radius) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (std::abs(f.grid().point(j)) <= radius) m = std::max(m, std::abs(f[j]));
    }
    return m;
}

double observed_order(double coarse_error, double fine_error) { return std::log2(coarse_error / fine_error); }

}  // namespace oscprop
