#include "oscprop/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oscprop/grid.hpp"

namespace oscprop {

namespace {

void check_policy(const UEvalPolicy& p) {
    if (!(p.target_abs_error >= 1e-14 && p.target_abs_error <= 1e-6))
        throw PreconditionError("UEvalPolicy.target_abs_error must lie in [1e-14, 1e-6]");
    if (p.quadrature_points < 4) throw PreconditionError("UEvalPolicy.quadrature_points must be >= 4");
}

void check_args(double a, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(z))
        throw PreconditionError("tricomi_u arguments must be finite");
    if (!(a > 0.0)) throw PreconditionError("tricomi_u supports a > 0 only, got a = " + std::to_string(a));
    if (!(z > 0.0)) throw PreconditionError("tricomi_u needs z > 0, got z = " + std::to_string(z));
}

bool is_integer(double v) { return std::floor(v) == v; }

// 1/Gamma(x), zero at the poles.
double rgamma(double x) {
    if (x <= 0.0 && is_integer(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

}  // namespace

double erfc_paper(double z) {
    if (!std::isfinite(z)) throw PreconditionError("erfc_paper needs a finite argument");
    if (z < 0.0) throw PreconditionError("erfc_paper is defined for z >= 0 only");
    return kErfcPaperScale * std::erfc(z);
}

double kummer_m(double a, double c, double z) {
    if (c <= 0.0 && is_integer(c)) throw PreconditionError("kummer_m: c must not be a non-positive integer");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 10000; ++k) {
        term *= (a + k) / (c + k) * z / (k + 1);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
        if (term == 0.0) return sum;
    }
    throw std::runtime_error("kummer_m: series did not converge");
}

double tricomi_u_integral(double a, double c, double z, const UEvalPolicy& policy) {
    check_policy(policy);
    check_args(a, c, z);
    const double p = c - a - 1.0;
    auto log_integrand = [&](double u) {
        const double eu = std::exp(u);
        // log1p(e^u) without overflow for large u
        const double l1p = u > 30.0 ? u + std::log1p(std::exp(-u)) : std::log1p(eu);
        return -z * eu + a * u + p * l1p;
    };

    // Locate the peak by a coarse outward scan from u = log(a / z).
    double u_peak = std::log(a / z);
    double l_peak = log_integrand(u_peak);
    for (double step : {1.0, 0.25, 0.0625}) {
        for (;;) {
            const double l_left = log_integrand(u_peak - step);
            const double l_right = log_integrand(u_peak + step);
            if (l_left > l_peak) {
                u_peak -= step;
                l_peak = l_left;
            } else if (l_right > l_peak) {
                u_peak += step;
                l_peak = l_right;
            } else {
                break;
            }
        }
    }

    // Truncate where the integrand has fallen by e^-45 relative to the peak.
    constexpr double kDrop = 45.0;
    double u_lo = u_peak;
    while (log_integrand(u_lo) > l_peak - kDrop) u_lo -= 0.5;
    double u_hi = u_peak;
    while (log_integrand(u_hi) > l_peak - kDrop) u_hi += 0.5;

    auto g = [&](double u) { return std::exp(log_integrand(u) - l_peak); };

    const double span = u_hi - u_lo;
    int panels = std::max(policy.quadrature_points, static_cast<int>(std::ceil(span / 0.5)));
    double h = span / panels;
    double sum = 0.5 * (g(u_lo) + g(u_hi));
    for (int k = 1; k < panels; ++k) sum += g(u_lo + k * h);
    double estimate = h * sum;

    const double scale = std::exp(l_peak - std::lgamma(a));
    for (int level = 0; level < 14; ++level) {
        double mid = 0.0;
        for (int k = 0; k < panels; ++k) mid += g(u_lo + (k + 0.5) * h);
        sum += mid;
        panels *= 2;
        h *= 0.5;
        const double refined = h * sum;
        const double diff = std::abs(refined - estimate) * scale;
        estimate = refined;
        if (level >= 1 && diff <= policy.target_abs_error * std::max(1.0, std::abs(estimate * scale))) break;
    }
    return estimate * scale;
}

double tricomi_u(double a, double c, double z, const UEvalPolicy& policy) {
    check_policy(policy);
    check_args(a, c, z);
    if (z < policy.series_cutoff && !is_integer(c)) {
        const double first = std::tgamma(1.0 - c) * rgamma(a - c + 1.0) * kummer_m(a, c, z);
        const double second =
            std::tgamma(c - 1.0) * rgamma(a) * std::pow(z, 1.0 - c) * kummer_m(a - c + 1.0, 2.0 - c, z);
        return first + second;
    }
    return tricomi_u_integral(a, c, z, policy);
}

double tricomi_u_deriv(double a, double c, double z, const UEvalPolicy& policy) {
    return -a * tricomi_u(a + 1.0, c + 1.0, z, policy);
}

double tricomi_u_small_z(double a, double c, double z) {
    if (!(a > 0.0) || !(z > 0.0)) throw PreconditionError("tricomi_u_small_z needs a > 0 and z > 0");
    if (!(c > 1.0) || c == 2.0)
        throw PreconditionError("tricomi_u_small_z: leading term Gamma(c-1)/Gamma(a) z^(1-c) needs c > 1, c != 2");
    return std::exp(std::lgamma(c - 1.0) - std::lgamma(a)) * std::pow(z, 1.0 - c);
}

}  // namespace oscprop
