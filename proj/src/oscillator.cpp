#include "oscprop/oscillator.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscprop/dirac.hpp"
#include "oscprop/fourier.hpp"
#include "oscprop/numerics.hpp"
#include "oscprop/special_functions.hpp"

namespace oscprop {

namespace {

constexpr double kKernelDecay = 1e-12;
constexpr double kSpectralEdge = 1e-10;
constexpr double kRoundTripFloor = 1e-15;
constexpr int kBranchOrder = 12;
constexpr double kUnresolvedWave = 1e-8;
constexpr double kMaxExponent = 700.0;

void check_params(const OscillatorParams& p) {
    if (!(p.a > 0.0) || !std::isfinite(p.a)) throw PreconditionError("oscillator coupling a must be positive");
    if (!(p.t >= 0.0) || !std::isfinite(p.t)) throw PreconditionError("t must be finite and >= 0");
    if (p.a * p.t > kMaxAt) throw PreconditionError("a t exceeds 300");
}

SampledFunction damp(const SampledFunction& f, double a) {
    return f.map([a](double x, complex v) { return v * std::exp(-0.5 * a * x * x); });
}

// b(X + shift) on the same grid, continued past the last sample by the
// exponential tail of the branch.
SampledFunction translate_branch(const SampledFunction& b, double shift, double a) {
    if (shift == 0.0) return b;
    const auto& X = b.grid();
    const std::size_t last = X.n() - 1;
    const double X_last = X.point(last);
    std::vector<complex> out(X.n());
    for (std::size_t i = 0; i < X.n(); ++i) {
        const double target = X.point(i) + shift;
        out[i] = target <= X_last ? lagrange_interpolate(b, target, kBranchOrder, OutOfRange::clamp_stencil)
                                  : b[last] * std::exp(-a * (target - X_last));
    }
    return SampledFunction(X, std::move(out));
}

// log K(t, x, x') with the (a, t) dependent constants evaluated once.
class KernelForm {
public:
    KernelForm(HeatKernelVariant variant, const OscillatorParams& p) : variant_(variant), a_(p.a) {
        check_params(p);
        if (!(p.t > 0.0)) throw PreconditionError("heat kernel needs t > 0");
        const double at = p.a * p.t;
        const double s2 = std::sinh(2.0 * at);
        const double log_norm = -0.5 * std::log(2.0 * s2);
        const double sh = std::sinh(at);
        two_sh2_ = 2.0 * sh * sh;
        ep_ = std::exp(at);
        em_ = std::exp(-at);
        switch (variant) {
            case HeatKernelVariant::mehler:
            case HeatKernelVariant::paper_corrected:
                offset_ = 0.5 * std::log(a_ / std::numbers::pi) + log_norm;
                scale_ = -a_ / (2.0 * s2);
                break;
            case HeatKernelVariant::paper_literal:
                offset_ = std::log(a_ * std::sqrt(2.0 / std::numbers::pi)) + log_norm;
                scale_ = 1.0 / (2.0 * s2);
                break;
            default: throw PreconditionError("unknown heat kernel variant");
        }
    }

    double operator()(double x, double xp) const {
        if (variant_ == HeatKernelVariant::mehler) {
            // (x^2 + x'^2) cosh 2at - 2 x x' = (x - x')^2 + 2 sinh^2(at) (x^2 + x'^2)
            const double q = (x - xp) * (x - xp) + two_sh2_ * (x * x + xp * xp);
            return offset_ + scale_ * q;
        }
        const double d = ep_ * x - em_ * xp;
        return offset_ + scale_ * d * d + 0.5 * a_ * (x * x - xp * xp);
    }

private:
    HeatKernelVariant variant_;
    double a_;
    double two_sh2_ = 0.0, ep_ = 0.0, em_ = 0.0;
    double offset_ = 0.0, scale_ = 0.0;
};

}  // namespace

const char* to_string(HeatKernelVariant v) {
    switch (v) {
        case HeatKernelVariant::mehler: return "mehler";
        case HeatKernelVariant::paper_literal: return "paper_literal";
        case HeatKernelVariant::paper_corrected: return "paper_corrected";
    }
    return "?";
}

const char* to_string(WaveForm f) { return f == WaveForm::corrected ? "corrected" : "paper_literal"; }

double heat_kernel_log(HeatKernelVariant variant, const OscillatorParams& p, double x, double xp) {
    return KernelForm(variant, p)(x, xp);
}

double heat_kernel(HeatKernelVariant variant, const OscillatorParams& p, double x, double xp) {
    return std::exp(heat_kernel_log(variant, p, x, xp));
}

SampledFunction heat_ho_kernel_route(const SampledFunction& u0, const OscillatorParams& p, HeatKernelVariant variant,
                                     Diagnostics* diag) {
    check_params(p);
    if (p.t == 0.0) return u0;
    if (edge_ratio(u0.values()) > kKernelDecay) warn(diag, "heat_ho_kernel_route: u0 has not decayed at the grid ends");
    const auto& g = u0.grid();
    const auto w = quadrature_weights(g);
    const auto x = g.points();
    std::vector<complex> wu(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) wu[j] = w[j] * u0[j];
    const KernelForm log_k(variant, p);
    std::vector<complex> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        complex acc = 0.0;
        for (std::size_t j = 0; j < g.n(); ++j) acc += std::exp(log_k(x[i], x[j])) * wu[j];
        if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
            std::ostringstream msg;
            msg << "heat_ho_kernel_route: " << to_string(variant) << " kernel overflows at x = " << x[i];
            throw PreconditionError(msg.str());
        }
        out[i] = acc;
    }
    return SampledFunction(g, std::move(out));
}

SampledFunction heat_ho_spectral_route(const SampledFunction& u0, const OscillatorParams& p, Diagnostics* diag) {
    check_params(p);
    if (p.t == 0.0) return u0;
    const double a = p.a, at = p.a * p.t;
    const auto G = forward_ft(damp(u0, a), diag);
    if (edge_ratio(G.values(), 4) > kSpectralEdge) {
        std::ostringstream msg;
        msg << "heat_ho_spectral_route: spectrum of exp(-a x^2/2) u0 is " << edge_ratio(G.values(), 4)
            << " of its peak at the band edge";
        throw PreconditionError(msg.str());
    }
    const auto R = spectral_resample(G, std::exp(-2.0 * at), diag);
    const double spread = -std::expm1(-4.0 * at) / (4.0 * a);
    std::vector<complex> S(R.size());
    for (std::size_t k = 0; k < S.size(); ++k) {
        const double xi = R.xi_grid().point(k);
        S[k] = std::exp(-spread * xi * xi) * R[k];
    }
    const SpectralFunction spectrum(u0.grid(), std::move(S));
    const SampledFunction g(u0.grid(), ift_at(spectrum, u0.grid().points()));
    auto u = remove_gaussian_damping(g, a, std::max(inverse_ft_noise(spectrum), edge_level(g)));
    u *= complex(std::exp(-at));
    return u;
}

SampledFunction heat_via_intertwining(const SampledFunction& u0, const OscillatorParams& p, Diagnostics* diag) {
    check_params(p);
    return heat_via_intertwining(u0, p, auto_intertwine_params(u0, p.a, kRoundTripFloor), diag);
}

SampledFunction heat_via_intertwining(const SampledFunction& u0, const OscillatorParams& p,
                                      const IntertwineParams& ip, Diagnostics* diag) {
    check_params(p);
    if (ip.a != p.a) throw PreconditionError("heat_via_intertwining: parameter sets disagree on a");
    const auto b = apply_T(u0, ip, diag);
    const BranchPair shifted{translate_branch(b.plus, p.t, p.a), translate_branch(b.minus, p.t, p.a)};
    return apply_T_inverse(shifted, ip, diag);
}

namespace {

SampledFunction wave_ho_corrected(const SampledFunction& v0, const OscillatorParams& p, Diagnostics* diag) {
    const double a = p.a, t = p.t;
    const auto ip = auto_intertwine_params(v0, a, kRoundTripFloor);
    const auto b = apply_T(v0, ip, diag);
    const auto& X = ip.X_grid;
    const std::size_t n = X.n(), last = n - 1;
    const double h = X.spacing();

    // Frequencies reached from X_min by the window.
    double g_peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weight(std::exp(-2.0 * a * X.point(i)), a);
        g_peak = std::max({g_peak, std::abs(b.plus[i]) / w, std::abs(b.minus[i]) / w});
    }
    const double X_reach = X.x_min() + 0.5 * t;
    if (g_peak > 0.0 && X_reach < X.point(last)) {
        const double w = weight(std::exp(-2.0 * a * X_reach), a);
        const double level = std::max(std::abs(lagrange_interpolate(b.plus, X_reach, kBranchOrder)),
                                      std::abs(lagrange_interpolate(b.minus, X_reach, kBranchOrder))) / w;
        if (level > kUnresolvedWave * g_peak) {
            std::ostringstream msg;
            msg << "wave_ho: window e^{at} reaches beyond the resolved band; damped spectrum at xi_max e^{-at} is "
                << level / g_peak << " of its peak";
            warn(diag, msg.str());
        }
    }

    const auto margin = static_cast<std::size_t>(std::ceil(0.5 * t / h)) + 8;
    const Grid1D ext = Grid1D::from_spacing(X.x_min() - static_cast<double>(margin) * h, h, n + 2 * margin);
    auto extend = [&](const SampledFunction& branch) {
        std::vector<complex> v(ext.n());
        for (std::size_t i = 0; i < n; ++i) v[margin + i] = branch[i];
        for (std::size_t i = margin + n; i < ext.n(); ++i) {
            v[i] = branch[last] * std::exp(-a * static_cast<double>(i - margin - last) * h);
        }
        return SampledFunction(ext, std::move(v));
    };
    auto restrict_to = [&](const SampledFunction& f) {
        std::vector<complex> v(f.values().begin() + static_cast<std::ptrdiff_t>(margin),
                               f.values().begin() + static_cast<std::ptrdiff_t>(margin + n));
        return SampledFunction(X, std::move(v));
    };
    const BranchPair V{restrict_to(wave_dirac(extend(b.plus), t)), restrict_to(wave_dirac(extend(b.minus), t))};
    return apply_T_inverse(V, ip, diag);
}

SampledFunction wave_ho_literal(const SampledFunction& v0, const OscillatorParams& p, Diagnostics* diag) {
    using GL = boost::math::quadrature::gauss<double, 16>;
    const double a = p.a, t = p.t, at = a * t;
    const auto& g = v0.grid();
    const double x_edge = std::max(std::abs(g.x_min()), std::abs(g.x_max()));
    if (0.5 * a * x_edge * x_edge > kMaxExponent) throw PreconditionError("wave_ho literal: exp(a x^2/2) overflows on this grid");

    const double xi_res = auto_intertwine_params(v0, a).xi_max();
    Diagnostics quiet;
    const auto F = forward_ft(v0.map([a](double x, complex v) { return v * std::exp(0.5 * a * x * x); }), &quiet);
    const auto Fs = F.as_sampled();
    const double dxi = F.xi_grid().spacing();

    // sigma = at s; nodes in s on (0, 1], graded toward 0, panels short
    // enough that xi' moves by at most a few spectral samples.
    std::vector<double> breaks{std::min(t / 80.0, 0.5)};
    while (breaks.back() < 1.0) breaks.push_back(std::min(1.0, 2.0 * breaks.back()));
    const double max_ds = std::max(1e-3, 4.0 * dxi / (xi_res * std::max(at, 1e-300)));
    std::vector<std::pair<double, double>> nodes;  // (sigma, weight incl. kernel)
    for (std::size_t q = 0; q + 1 < breaks.size(); ++q) {
        const int pieces = std::max(1, static_cast<int>(std::ceil((breaks[q + 1] - breaks[q]) / max_ds)));
        const double width = (breaks[q + 1] - breaks[q]) / pieces;
        for (int r = 0; r < pieces; ++r) {
            const double mid = breaks[q] + (r + 0.5) * width, half = 0.5 * width;
            for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
                for (double sign : {1.0, -1.0}) {
                    const double s = mid + sign * GL::abscissa()[i] * half;
                    // Erfc(sqrt(a) t / sqrt(2 |sigma|)) with sigma = at s.
                    const double k = kErfcPaperScale * std::erfc(std::sqrt(t / (2.0 * s))) * GL::weights()[i] * half * at;
                    if (k == 0.0) continue;
                    nodes.emplace_back(at * s, k);
                    nodes.emplace_back(-at * s, k);
                }
            }
        }
    }

    std::vector<complex> H(F.size());
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double xi = F.xi_grid().point(k);
        if (!(xi > 0.0) || xi > xi_res) continue;
        complex inner = 0.0;
        for (const auto& [sigma, w] : nodes) {
            const double xq = xi * std::exp(sigma);
            if (xq > xi_res) continue;
            const double growth = std::exp((xq * xq - xi * xi) / (4.0 * a));
            inner += w * growth * std::sqrt(xq) * lagrange_interpolate(Fs, xq, 10, OutOfRange::zero);
        }
        H[k] = inner / std::sqrt(xi);
    }
    auto v = inverse_ft(SpectralFunction(g, std::move(H)), diag);
    const double pre = -1.0 / (a * std::sqrt(std::numbers::pi));
    std::vector<complex> out(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.point(j);
        out[j] = pre * std::exp(0.5 * a * x * x) * v[j];
        if (!std::isfinite(out[j].real()) || !std::isfinite(out[j].imag()))
            throw PreconditionError("wave_ho literal: result overflows");
    }
    return SampledFunction(g, std::move(out));
}

}  // namespace

SampledFunction wave_ho(const SampledFunction& v0, const OscillatorParams& p, WaveForm form, Diagnostics* diag) {
    check_params(p);
    if (p.t == 0.0) return SampledFunction(v0.grid());
    return form == WaveForm::corrected ? wave_ho_corrected(v0, p, diag) : wave_ho_literal(v0, p, diag);
}

}  // namespace oscprop
