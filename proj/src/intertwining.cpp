#include "oscprop/intertwining.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscprop/numerics.hpp"

namespace oscprop {

namespace {

constexpr int kXOrder = 12;
constexpr std::size_t kNoiseProbe = 64;
constexpr double kNoiseMultiple = 4.0;
constexpr std::size_t kEnvelopeHalfWidth = 8;
constexpr double kFarXi = 1e-14;
constexpr double kMaxWeightExponent = 700.0;

double band_edge(const Grid1D& x_grid) { return -reciprocal_grid(x_grid).x_min(); }

SampledFunction damp(const SampledFunction& phi, double a) {
    return phi.map([a](double x, complex v) { return v * std::exp(-0.5 * a * x * x); });
}

double sup(std::span<const complex> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

double edge_level(const SampledFunction& g) {
    const std::size_t n = g.size();
    const std::size_t m = std::min(kNoiseProbe, n / 8);
    double level = 0.0;
    for (std::size_t j = 0; j < m; ++j) level = std::max({level, std::abs(g[j]), std::abs(g[n - 1 - j])});
    return level;
}

double IntertwineParams::xi_max() const { return std::exp(-2.0 * a * X_grid.x_min()); }

double IntertwineParams::xi_min() const { return std::exp(-2.0 * a * X_grid.point(X_grid.n() - 1)); }

IntertwineParams make_intertwine_params(double a, const Grid1D& x_grid, const Grid1D& X_grid) {
    if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("oscillator coupling a must be positive");
    if (X_grid.n() < 16) throw PreconditionError("X grid needs at least 16 samples");
    const Grid1D xi = reciprocal_grid(x_grid);
    IntertwineParams p{a, x_grid, X_grid};
    if (p.xi_max() > band_edge(x_grid) * (1.0 + 1e-12)) {
        throw PreconditionError("X_min maps beyond the frequency band of the x grid");
    }
    if (p.xi_max() * p.xi_max() / (4.0 * a) > kMaxWeightExponent) {
        throw PreconditionError("X_min maps to frequencies where the weight overflows");
    }
    if (p.xi_min() >= xi.spacing()) {
        throw PreconditionError("X grid does not reach frequencies below the first nonzero frequency sample");
    }
    return p;
}

IntertwineParams auto_intertwine_params(const SampledFunction& phi, double a, double spectral_floor, std::size_t n_X) {
    if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("oscillator coupling a must be positive");
    if (!(spectral_floor > 0.0 && spectral_floor < 1.0)) throw PreconditionError("spectral floor must lie in (0, 1)");
    const auto F = forward_ft(damp(phi, a));
    const double peak = sup(F.values());
    const double edge = band_edge(phi.grid());
    double xi_hi = std::min(1.0, edge);
    if (peak > 0.0) {
        double last = 0.0;
        for (std::size_t k = 0; k < F.size(); ++k) {
            if (std::abs(F[k]) > spectral_floor * peak) last = std::max(last, std::abs(F.xi_grid().point(k)));
        }
        xi_hi = std::min(edge, last + 2.0 * F.xi_grid().spacing());
    }
    if (xi_hi * xi_hi / (4.0 * a) > kMaxWeightExponent) {
        std::ostringstream msg;
        msg << "spectrum of exp(-a x^2/2) phi extends to |xi| = " << xi_hi << ", where the weight overflows";
        throw PreconditionError(msg.str());
    }
    const double X_min = -std::log(xi_hi) / (2.0 * a);
    const double X_max = -std::log(kFarXi) / (2.0 * a);
    return make_intertwine_params(a, phi.grid(), make_grid(X_min, X_max, static_cast<std::int64_t>(n_X)));
}

double weight(double xi, double a) {
    if (xi == 0.0 || !std::isfinite(xi)) throw PreconditionError("weight is singular at xi = 0");
    if (!(a > 0.0)) throw PreconditionError("oscillator coupling a must be positive");
    return std::exp(0.5 * std::log(std::abs(xi)) + xi * xi / (4.0 * a));
}

BranchPair apply_T(const SampledFunction& phi, const IntertwineParams& p, Diagnostics* diag, DomainCheck check,
                   double* tail) {
    if (!(phi.grid() == p.x_grid)) throw PreconditionError("apply_T: input is not on the parameter x grid");
    const auto F = forward_ft(damp(phi, p.a));
    const double peak = sup(F.values());
    double outside = 0.0;
    const double xi_max = p.xi_max();
    for (std::size_t k = 0; k < F.size(); ++k) {
        if (std::abs(F.xi_grid().point(k)) > xi_max) outside = std::max(outside, std::abs(F[k]));
    }
    const double ratio = peak > 0.0 ? outside / peak : 0.0;
    if (tail != nullptr) *tail = ratio;
    if (ratio > kSaTailTolerance) {
        std::ostringstream msg;
        msg << "apply_T: spectral tail " << ratio << " beyond |xi| = " << xi_max << " exceeds " << kSaTailTolerance;
        if (check == DomainCheck::enforce) throw PreconditionError(msg.str());
        warn(diag, msg.str());
    }

    // The weight multiplies the transform by up to ~1e15 near X_min, so the
    // transform is evaluated by direct sums in extended precision rather than
    // read off an FFT.
    // Samples are paired around the grid center m so that the cosine and sine
    // sums of the even and odd parts are formed separately:
    //   sum_j exp(-+i xi x_j) g_j = exp(-+i xi x_m) (S -+ i A).
    const auto& xg = p.x_grid;
    const std::size_t n = xg.n();
    const std::size_t m = n / 2;
    std::vector<std::complex<long double>> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long double x = xg.point(j);
        g[j] = std::exp(-0.5L * p.a * x * x) * std::complex<long double>(phi[j].real(), phi[j].imag());
    }
    std::vector<std::complex<long double>> even(m), odd(m);
    for (std::size_t k = 1; k < m; ++k) {
        even[k] = g[m + k] + g[m - k];
        odd[k] = g[m + k] - g[m - k];
    }
    const long double h = xg.spacing();
    const long double xc = static_cast<long double>(xg.x_min()) + static_cast<long double>(m) * h;
    const long double amp = h / std::sqrt(2.0L * std::numbers::pi_v<long double>);
    constexpr std::size_t kReseed = 64;

    const auto& X = p.X_grid;
    std::vector<complex> plus(X.n()), minus(X.n());
    for (std::size_t i = 0; i < X.n(); ++i) {
        const long double xi = std::exp(-2.0L * p.a * static_cast<long double>(X.point(i)));
        const long double theta = xi * h;
        const long double c = std::cos(theta), s = std::sin(theta);
        std::complex<long double> S = g[m], A = 0;
        long double ck = 1, sk = 0;
        for (std::size_t k = 1; k < m; ++k) {
            if (k % kReseed == 0) {
                ck = std::cos(static_cast<long double>(k) * theta);
                sk = std::sin(static_cast<long double>(k) * theta);
            } else {
                const long double t = ck * c - sk * s;
                sk = ck * s + sk * c;
                ck = t;
            }
            S += ck * even[k];
            A += sk * odd[k];
        }
        const long double end = static_cast<long double>(m) * theta;
        S += std::cos(end) * g[0];
        A -= std::sin(end) * g[0];
        const long double w = amp * std::exp(0.5L * std::log(xi) + xi * xi / (4.0L * p.a));
        const std::complex<long double> I(0, 1);
        const std::complex<long double> shift = std::polar(1.0L, -xi * xc);
        const auto bp = w * shift * (S - I * A);
        const auto bm = w * std::conj(shift) * (S + I * A);
        plus[i] = complex(static_cast<double>(bp.real()), static_cast<double>(bp.imag()));
        minus[i] = complex(static_cast<double>(bm.real()), static_cast<double>(bm.imag()));
    }
    return {SampledFunction(X, std::move(plus)), SampledFunction(X, std::move(minus))};
}

double inverse_ft_noise(const SpectralFunction& F) {
    double s = 0.0;
    for (const auto& v : F.values()) s += std::norm(v);
    return 4e-16 * std::sqrt(s) * F.xi_grid().spacing() / std::sqrt(2.0 * std::numbers::pi);
}

SampledFunction remove_gaussian_damping(const SampledFunction& g, double a, double noise) {
    const std::size_t n = g.size();
    const double level = kNoiseMultiple * noise;
    std::vector<double> mag(n);
    for (std::size_t j = 0; j < n; ++j) mag[j] = std::abs(g[j]);
    // Windowed maximum so isolated zeros of g do not end the scan.
    auto envelope = [&](std::size_t j) {
        const std::size_t lo = j >= kEnvelopeHalfWidth ? j - kEnvelopeHalfWidth : 0;
        const std::size_t hi = std::min(n, j + kEnvelopeHalfWidth + 1);
        return *std::max_element(mag.begin() + static_cast<std::ptrdiff_t>(lo), mag.begin() + static_cast<std::ptrdiff_t>(hi));
    };
    const auto peak = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    std::vector<complex> v(n, complex(0.0));
    if (mag[peak] <= level) return SampledFunction(g.grid(), std::move(v));

    std::size_t hi = peak;
    while (hi + 1 < n && envelope(hi + 1) > level) ++hi;
    std::size_t lo = peak;
    while (lo > 0 && envelope(lo - 1) > level) --lo;
    for (std::size_t j = lo; j <= hi; ++j) {
        if (mag[j] <= level) continue;
        const double x = g.grid().point(j);
        const double e = 0.5 * a * x * x;
        if (e <= kMaxWeightExponent) v[j] = g[j] * std::exp(e);
    }
    return SampledFunction(g.grid(), std::move(v));
}

SampledFunction apply_T_inverse(const BranchPair& b, const IntertwineParams& p, Diagnostics* diag) {
    const auto& X = p.X_grid;
    if (!(b.plus.grid() == X) || !(b.minus.grid() == X)) {
        throw PreconditionError("apply_T_inverse: branches are not on the parameter X grid");
    }
    const std::size_t last = X.n() - 1;
    const double w_max = weight(p.xi_max(), p.a);
    for (const auto* branch : {&b.plus, &b.minus}) {
        const double peak = branch->sup_norm();
        if (peak == 0.0) continue;
        if (std::abs((*branch)[last]) > 1e-6 * peak) {
            throw PreconditionError("apply_T_inverse: branch data does not decay at the far X end");
        }
    }

    const Grid1D xi = reciprocal_grid(p.x_grid);
    std::vector<complex> G(xi.n(), complex(0.0));
    const double w_min = weight(p.xi_min(), p.a);
    G[xi.n() / 2] = 0.5 * (b.plus[last] + b.minus[last]) / w_min;
    for (std::size_t k = 0; k < xi.n(); ++k) {
        const double xk = xi.point(k);
        if (k == xi.n() / 2 || std::abs(xk) > p.xi_max()) continue;
        const double Xk = -std::log(std::abs(xk)) / (2.0 * p.a);
        const auto& branch = xk > 0.0 ? b.plus : b.minus;
        G[k] = lagrange_interpolate(branch, Xk, kXOrder, OutOfRange::clamp_stencil) / weight(xk, p.a);
    }
    double g_peak = 0.0;
    for (const auto& v : G) g_peak = std::max(g_peak, std::abs(v));
    const double low_end = std::max(std::abs(b.plus[0]), std::abs(b.minus[0])) / w_max;
    if (g_peak > 0.0 && low_end > 1e-6 * g_peak) {
        throw PreconditionError("apply_T_inverse: branch data does not decay at the X_min end");
    }

    const SpectralFunction spectrum(p.x_grid, std::move(G));
    if (edge_ratio(spectrum.values()) > 1e-10) warn(diag, "apply_T_inverse: spectrum has not decayed at the band edges");
    const auto x = p.x_grid.points();
    const SampledFunction g(p.x_grid, ift_at(spectrum, x));
    return remove_gaussian_damping(g, p.a, std::max(inverse_ft_noise(spectrum), edge_level(g)));
}

SampledFunction apply_oscillator(const SampledFunction& phi, double a) {
    auto out = spectral_derivative(phi, 2);
    out -= phi.map([a](double x, complex v) { return a * a * x * x * v; });
    return out;
}

SampledFunction apply_conjugated_oscillator(const SampledFunction& psi, double a) {
    auto out = spectral_derivative(psi, 2);
    out += spectral_derivative(psi, 1).map([a](double x, complex v) { return 2.0 * a * x * v; });
    out += complex(a) * psi;
    return out;
}

BranchPair branch_derivative(const BranchPair& b) {
    return {SampledFunction(b.plus.grid(), centered_derivative(b.plus, 6)),
            SampledFunction(b.minus.grid(), centered_derivative(b.minus, 6))};
}

VerificationReport intertwine_residual(const SampledFunction& phi, const IntertwineParams& p, Diagnostics* diag) {
    double tail = 0.0;
    Diagnostics local;
    const auto Tphi = apply_T(phi, p, &local, DomainCheck::warn, &tail);
    const auto TLphi = apply_T(apply_oscillator(phi, p.a), p, &local, DomainCheck::warn);
    const auto DTphi = branch_derivative(Tphi);

    double worst = 0.0;
    const std::size_t n = p.X_grid.n();
    auto branch_ratio = [&](const SampledFunction& lhs, const SampledFunction& rhs) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 3; i + 3 < n; ++i) {
            num += std::norm(lhs[i] - rhs[i]);
            den += std::norm(rhs[i]);
        }
        return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    };
    worst = std::max(branch_ratio(TLphi.plus, DTphi.plus), branch_ratio(TLphi.minus, DTphi.minus));
    if (diag != nullptr) {
        for (auto& w : local.warnings) diag->warn(w);
    }

    std::ostringstream notes;
    notes << "a=" << p.a << " spectral tail " << tail;
    if (tail > kSaTailTolerance) {
        warn(diag, "intertwine_residual: input violates the spectral tail condition");
        return make_informational("intertwine_residual", worst, notes.str() + " (outside the admissible class)");
    }
    return make_check("intertwine_residual", worst, 1e-5, notes.str());
}

}  // namespace oscprop
