#include "oscprop/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace oscprop {

namespace {

constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void run_fft(std::vector<complex>& data, int sign) {
    const int n = static_cast<int>(data.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

// exp(i * angle) with the angle reduced in extended precision.
complex unit_phase(long double angle) {
    const long double r = std::remainder(angle, kTwoPiL);
    return {static_cast<double>(std::cos(r)), static_cast<double>(std::sin(r))};
}

// The k-th centered frequency from its index. The rounded grid point is off
// by ~1e-16 |xi|, which times |x_min| would show up as a phase error.
long double exact_frequency(const Grid1D& x_grid, std::size_t k) {
    const auto n = static_cast<long double>(x_grid.n());
    return (static_cast<long double>(k) - n / 2) * kTwoPiL / (n * static_cast<long double>(x_grid.spacing()));
}

using cld = std::complex<long double>;

cld unit_phase_l(long double angle) {
    const long double r = std::remainder(angle, kTwoPiL);
    return {std::cos(r), std::sin(r)};
}

// sum_j exp(sign * i * w * (x0 + j h)) v_j with periodic exact re-seeding.
cld phase_sum(std::span<const complex> v, long double w, long double x0, long double h, int sign) {
    constexpr std::size_t kReseed = 64;
    const cld step = unit_phase_l(sign * w * h);
    cld acc(0.0L);
    cld ph;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j % kReseed == 0) ph = unit_phase_l(sign * w * (x0 + static_cast<long double>(j) * h));
        acc += ph * cld(v[j].real(), v[j].imag());
        ph *= step;
    }
    return acc;
}

}  // namespace

Grid1D reciprocal_grid(const Grid1D& x_grid) {
    const std::size_t n = x_grid.n();
    if (n % 2 != 0) throw PreconditionError("Fourier grids need an even number of samples");
    const double dxi = static_cast<double>(kTwoPiL / (static_cast<long double>(n) * x_grid.spacing()));
    return Grid1D::centered(dxi, n);
}

SpectralFunction::SpectralFunction(Grid1D x_grid, std::vector<complex> values)
    : x_grid_(x_grid), xi_grid_(reciprocal_grid(x_grid)), values_(std::move(values)) {
    if (values_.size() != x_grid_.n()) throw PreconditionError("spectral sample count does not match grid");
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("non-finite spectral sample");
    }
}

double edge_ratio(std::span<const complex> values, std::size_t count) {
    double peak = 0.0;
    for (const auto& v : values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    for (std::size_t j = 0; j < std::min(count, values.size()); ++j) {
        edge = std::max(edge, std::abs(values[j]));
        edge = std::max(edge, std::abs(values[values.size() - 1 - j]));
    }
    return edge / peak;
}

SpectralFunction forward_ft(const SampledFunction& f, Diagnostics* diag) {
    const auto& g = f.grid();
    if (g.n() % 2 != 0) throw PreconditionError("Fourier grids need an even number of samples");
    if (edge_ratio(f.values()) > 1e-10)
        warn(diag, "forward_ft: input has not decayed to 1e-10 of its peak at the grid ends");

    const std::size_t n = g.n();
    std::vector<complex> data(f.values().begin(), f.values().end());
    for (std::size_t j = 1; j < n; j += 2) data[j] = -data[j];
    run_fft(data, FFTW_FORWARD);
    const double amp = g.spacing() * kInvSqrt2Pi;
    for (std::size_t k = 0; k < n; ++k) data[k] *= amp * unit_phase(-exact_frequency(g, k) * g.x_min());
    return SpectralFunction(g, std::move(data));
}

SampledFunction inverse_ft(const SpectralFunction& F, Diagnostics* diag) {
    const auto& g = F.x_grid();
    const auto& xi = F.xi_grid();
    if (edge_ratio(F.values()) > 1e-10)
        warn(diag, "inverse_ft: spectrum has not decayed to 1e-10 of its peak at the band edges");

    const std::size_t n = g.n();
    std::vector<complex> data(n);
    for (std::size_t k = 0; k < n; ++k) data[k] = F[k] * unit_phase(exact_frequency(g, k) * g.x_min());
    run_fft(data, FFTW_BACKWARD);
    const double amp = xi.spacing() * kInvSqrt2Pi;
    for (std::size_t j = 0; j < n; ++j) data[j] *= (j % 2 ? -amp : amp);
    return SampledFunction(g, std::move(data));
}

std::vector<complex> ft_at(const SampledFunction& f, std::span<const double> xi) {
    const auto& g = f.grid();
    const long double amp = static_cast<long double>(g.spacing()) / std::sqrt(kTwoPiL);
    std::vector<complex> out(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k) {
        const cld s = amp * phase_sum(f.values(), xi[k], g.x_min(), g.spacing(), -1);
        out[k] = complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
    }
    return out;
}

std::vector<complex> ift_at(const SpectralFunction& F, std::span<const double> x) {
    const auto& xi = F.xi_grid();
    const long double amp = static_cast<long double>(xi.spacing()) / std::sqrt(kTwoPiL);
    std::vector<complex> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const cld s = amp * phase_sum(F.values(), x[j], xi.x_min(), xi.spacing(), +1);
        out[j] = complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
    }
    return out;
}

SpectralFunction spectral_resample(const SpectralFunction& F, double scale, Diagnostics* diag) {
    if (!(scale > 0.0) || scale > 1.0)
        throw PreconditionError("spectral_resample needs scale in (0, 1]; larger scales need out-of-band samples");
    if (scale == 1.0) return F;
    if (edge_ratio(F.values(), 4) > 1e-10)
        warn(diag, "spectral_resample: spectrum reaches the band edge; interpolation will degrade");
    const SampledFunction f = inverse_ft(F);
    const auto& xi = F.xi_grid();
    std::vector<double> scaled(xi.n());
    for (std::size_t k = 0; k < xi.n(); ++k) scaled[k] = scale * xi.point(k);
    return SpectralFunction(F.x_grid(), ft_at(f, scaled));
}

SampledFunction spectral_derivative(const SampledFunction& f, int k) {
    if (k < 0) throw PreconditionError("derivative order must be non-negative");
    const auto F = forward_ft(f);
    const auto& xi = F.xi_grid();
    std::vector<complex> v(F.values().begin(), F.values().end());
    for (std::size_t m = 0; m < v.size(); ++m) v[m] *= std::pow(complex(0.0, xi.point(m)), k);
    if (k % 2 == 1) v[0] = 0.0;
    return inverse_ft(SpectralFunction(f.grid(), std::move(v)));
}

SampledFunction spectral_shift(const SampledFunction& f, double shift) {
    const auto F = forward_ft(f);
    const auto& xi = F.xi_grid();
    std::vector<complex> v(F.values().begin(), F.values().end());
    for (std::size_t m = 1; m < v.size(); ++m) v[m] *= unit_phase(static_cast<long double>(xi.point(m)) * shift);
    // Nyquist mode: keep the real (cosine) part of the phase.
    v[0] *= std::cos(static_cast<long double>(xi.point(0)) * shift);
    return inverse_ft(SpectralFunction(f.grid(), std::move(v)));
}

}  // namespace oscprop
