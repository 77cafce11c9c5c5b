#include "oscprop/dirac.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "oscprop/fourier.hpp"
#include "oscprop/special_functions.hpp"

namespace oscprop {

namespace {

constexpr int kStencil = 10;
constexpr double kKernelCutoff = 1.0 / 80.0;
constexpr double kMaxPanelSpacings = 8.0;
constexpr double kDecayTolerance = 1e-10;
constexpr double kSpectralFloor = 1e-14;

struct Node {
    double shift;
    double weight;
};

// Gauss-Legendre nodes in s on (0, 1], panels doubling from t/80 and split
// so that no panel spans more than 8 grid spacings of X.
std::vector<Node> window_nodes(double t, double h, const std::function<double(double)>& kernel) {
    using GL = boost::math::quadrature::gauss<double, 16>;
    std::vector<double> breaks{std::min(kKernelCutoff * t, 0.5)};
    while (breaks.back() < 1.0) breaks.push_back(std::min(1.0, 2.0 * breaks.back()));

    std::vector<Node> nodes;
    const double max_ds = kMaxPanelSpacings * h / (0.5 * t);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double lo = breaks[p], hi = breaks[p + 1];
        const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_ds)));
        const double width = (hi - lo) / pieces;
        for (int q = 0; q < pieces; ++q) {
            const double mid = lo + (q + 0.5) * width, half = 0.5 * width;
            for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
                const double w = GL::weights()[i] * half;
                for (double sign : {1.0, -1.0}) {
                    if (i == 0 && sign < 0.0 && GL::abscissa()[0] == 0.0) continue;
                    const double s = mid + sign * GL::abscissa()[i] * half;
                    const double k = kernel(s) * w;
                    if (k == 0.0) continue;
                    nodes.push_back({0.5 * t * s, k});
                    nodes.push_back({-0.5 * t * s, k});
                }
            }
        }
    }
    return nodes;
}

// sum over nodes of weight * V0(X_j + shift), V0 = 0 off the grid.
SampledFunction window_convolve(const SampledFunction& V0, const std::vector<Node>& nodes) {
    const std::size_t n = V0.size();
    const double h = V0.grid().spacing();
    std::vector<complex> out(n);
    const auto v = V0.values();
    for (const auto& node : nodes) {
        const double u = node.shift / h;
        const auto base = static_cast<std::ptrdiff_t>(std::floor(u));
        const double frac = u - static_cast<double>(base);
        std::array<double, kStencil> L{};
        constexpr int lo = -(kStencil / 2 - 1);
        for (int m = 0; m < kStencil; ++m) {
            double w = node.weight;
            for (int k = 0; k < kStencil; ++k) {
                if (k != m) w *= (frac - (lo + k)) / static_cast<double>(m - k);
            }
            L[static_cast<std::size_t>(m)] = w;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const std::ptrdiff_t first = static_cast<std::ptrdiff_t>(j) + base + lo;
            complex acc = 0.0;
            for (int m = 0; m < kStencil; ++m) {
                const std::ptrdiff_t idx = first + m;
                if (idx >= 0 && idx < static_cast<std::ptrdiff_t>(n)) acc += L[static_cast<std::size_t>(m)] * v[static_cast<std::size_t>(idx)];
            }
            out[j] += acc;
        }
    }
    return SampledFunction(V0.grid(), std::move(out));
}

void check_window(const SampledFunction& V0, double t, Diagnostics* diag) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionError("wave_dirac: t must be finite and >= 0");
    if (0.5 * t > 0.5 * V0.grid().length()) {
        std::ostringstream msg;
        msg << "wave_dirac: window half-width t/2 = " << 0.5 * t << " exceeds half the grid length "
            << 0.5 * V0.grid().length();
        throw PreconditionError(msg.str());
    }
    if (edge_ratio(V0.values()) > kDecayTolerance) warn(diag, "wave_dirac: V0 has not decayed at the grid ends");
}

SampledFunction window_integral(const SampledFunction& V0, double t, Diagnostics* diag,
                                const std::function<double(double)>& kernel) {
    check_window(V0, t, diag);
    if (t == 0.0) return SampledFunction(V0.grid());
    return window_convolve(V0, window_nodes(t, V0.grid().spacing(), kernel));
}

}  // namespace

SampledFunction heat_dirac(const SampledFunction& U0, double t, Diagnostics* diag) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionError("heat_dirac: t must be finite and >= 0");
    const auto& g = U0.grid();
    // U0 on [x_min, x_min + t) reappears at the top end of the grid.
    double peak = 0.0, wrapped = 0.0;
    for (std::size_t j = 0; j < U0.size(); ++j) {
        const double m = std::abs(U0[j]);
        peak = std::max(peak, m);
        if (g.point(j) < g.x_min() + t) wrapped = std::max(wrapped, m);
    }
    if (t >= g.length() || (peak > 0.0 && wrapped > kDecayTolerance * peak)) {
        std::ostringstream msg;
        msg << "heat_dirac: shift " << t << " wraps undecayed data around the grid (" << wrapped / peak << " of peak)";
        warn(diag, msg.str());
    }
    return spectral_shift(U0, t);
}

double wave_kernel_dirac(double t, double X, double Xp) {
    if (!(t > 0.0)) throw PreconditionError("wave kernel needs t > 0");
    if (X == Xp) throw PreconditionError("wave kernel is singular at X == X'");
    return (2.0 / std::sqrt(std::numbers::pi)) * erfc_paper(t / std::sqrt(4.0 * std::abs(X - Xp)));
}

double wave_kernel_dirac_u(double t, double X, double Xp) {
    if (!(t > 0.0)) throw PreconditionError("wave kernel needs t > 0");
    if (X == Xp) throw PreconditionError("wave kernel is singular at X == X'");
    const double u = std::abs(X - Xp);
    const double z = t * t / (4.0 * u);
    return t / std::sqrt(4.0 * std::numbers::pi * u) * std::exp(-z) * tricomi_u(1.0, 1.5, z);
}

SampledFunction wave_dirac(const SampledFunction& V0, double t, Diagnostics* diag) {
    return window_integral(V0, t, diag, [t](double s) { return 0.5 * t * std::erfc(std::sqrt(t / (2.0 * s))); });
}

SampledFunction wave_dirac_substituted(const SampledFunction& V0, double t, Diagnostics* diag) {
    const double C = 1.0 / (std::numbers::sqrt2 * std::sqrt(4.0 * std::numbers::pi));
    return window_integral(V0, t, diag, [t, C](double s) {
        const double z = t / (2.0 * s);
        const double e = std::exp(-z);
        if (e == 0.0) return 0.0;
        return C * std::pow(t, 1.5) / std::sqrt(s) * e * tricomi_u(1.0, 1.5, z);
    });
}

double constant_data_deficit(double t) {
    const double c = 0.5 * t;
    return 1.0 - ((1.0 + 2.0 * c) * std::erfc(std::sqrt(c)) - 2.0 * std::sqrt(c / std::numbers::pi) * std::exp(-c));
}

complex wave_multiplier(double t, complex z) {
    const complex w = t * t * z;
    if (std::abs(w) <= 1.0) {
        // t * sum (-w)^n / (2n+1)!
        complex term = t, sum = t;
        for (int n = 1; n < 40; ++n) {
            term *= -w / static_cast<double>((2 * n) * (2 * n + 1));
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    const complex r = std::sqrt(z);
    return std::sin(t * r) / r;
}

SampledFunction spectral_wave_oracle_dirac(const SampledFunction& V0, double t, Diagnostics* diag) {
    if (!std::isfinite(t)) throw PreconditionError("spectral oracle: t must be finite");
    const auto F = forward_ft(V0, diag);
    double peak = 0.0;
    for (const auto& v : F.values()) peak = std::max(peak, std::abs(v));
    std::vector<complex> out(F.size());
    double radius = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        if (std::abs(F[k]) >= kSpectralFloor * peak && peak > 0.0) radius = std::max(radius, std::abs(F.xi_grid().point(k)));
    }
    if (std::abs(t) * std::sqrt(0.5 * radius) > kWaveGrowthGuard) {
        std::ostringstream msg;
        msg << "spectral oracle: t sqrt(R/2) = " << std::abs(t) * std::sqrt(0.5 * radius) << " exceeds "
            << kWaveGrowthGuard << " (R = " << radius << ")";
        throw PreconditionError(msg.str());
    }
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double xi = F.xi_grid().point(k);
        if (std::abs(xi) > radius) continue;
        out[k] = wave_multiplier(t, complex(0.0, -xi)) * F[k];
    }
    return inverse_ft(SpectralFunction(F.x_grid(), std::move(out)), diag);
}

}  // namespace oscprop
