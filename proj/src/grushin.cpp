#include "oscprop/grushin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscprop/numerics.hpp"
#include "oscprop/oscillator.hpp"

namespace oscprop {

namespace {

double oscillator_kernel(double a, const GrushinPoint& p) {
    const double d = p.x - p.xp;
    if (a == 0.0) return std::exp(-d * d / (4.0 * p.t)) / std::sqrt(4.0 * std::numbers::pi * p.t);
    return heat_kernel(HeatKernelVariant::mehler, {std::abs(a), p.t}, p.x, p.xp);
}

void check_point(const GrushinPoint& p) {
    if (!(p.t > 0.0) || !std::isfinite(p.t)) throw PreconditionError("grushin kernel needs t > 0");
    for (double v : {p.x, p.y, p.xp, p.yp}) {
        if (!std::isfinite(v)) throw PreconditionError("grushin kernel needs finite coordinates");
    }
}

}  // namespace

complex grushin_heat_kernel(const GrushinPoint& p, double a_max, int n_a) {
    check_point(p);
    if (!(a_max > 0.0) || !std::isfinite(a_max)) throw PreconditionError("a_max must be positive");
    if (n_a < 129 || n_a % 2 == 0) throw PreconditionError("n_a must be odd and >= 129");
    if (a_max * p.t > kMaxAt) throw PreconditionError("a_max t exceeds 300");

    const int half = (n_a - 1) / 2;
    const double h = a_max / half;
    std::vector<double> H(static_cast<std::size_t>(half) + 1);
    for (int k = 0; k <= half; ++k) H[static_cast<std::size_t>(k)] = oscillator_kernel(k * h, p);
    const double peak = *std::max_element(H.begin(), H.end());
    if (H.back() > kGrushinDecay * peak) {
        std::ostringstream msg;
        msg << "grushin kernel: integrand at a_max = " << a_max << " is " << H.back() / peak << " of its peak";
        throw PreconditionError(msg.str());
    }
    const double dy = p.y - p.yp;
    std::vector<complex> f(static_cast<std::size_t>(n_a));
    for (int k = -half; k <= half; ++k) {
        const double a = k * h;
        f[static_cast<std::size_t>(k + half)] = std::polar(H[static_cast<std::size_t>(std::abs(k))], dy * a);
    }
    return simpson_closed(f, h) / (2.0 * std::numbers::pi);
}

double suggest_a_max(const GrushinPoint& p) {
    check_point(p);
    constexpr double step = 1.0 / 16.0;
    double peak = oscillator_kernel(0.0, p), a = 0.0;
    for (;;) {
        a += step;
        if (a * p.t > kMaxAt) throw PreconditionError("grushin kernel: integrand does not decay before a t = 300");
        const double v = oscillator_kernel(a, p);
        peak = std::max(peak, v);
        if (v <= kGrushinDecay * peak && oscillator_kernel(2.0 * a, p) <= kGrushinDecay * peak) return 1.1 * a;
    }
}

complex grushin_heat_kernel_converged(const GrushinPoint& p, double a_max, int n_a, double rel_tol, int max_doublings) {
    complex prev = grushin_heat_kernel(p, a_max, n_a);
    for (int i = 0; i < max_doublings; ++i) {
        n_a = 2 * n_a - 1;
        const complex next = grushin_heat_kernel(p, a_max, n_a);
        if (std::abs(next - prev) <= rel_tol * std::abs(next)) return next;
        prev = next;
    }
    std::ostringstream msg;
    msg << "grushin kernel: quadrature did not converge to " << rel_tol << " with " << n_a << " nodes";
    throw PreconditionError(msg.str());
}

}  // namespace oscprop
