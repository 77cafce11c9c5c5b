#pragma once

#include <span>
#include <vector>

#include "oscprop/grid.hpp"

namespace oscprop {

/**
 * Samples of a continuous Fourier transform
 *
 *   (F f)(xi) = 1/sqrt(2 pi) * integral exp(-i x xi) f(x) dx
 *
 * on the centered frequency grid reciprocal to a spatial grid: n even,
 * spacing 2 pi / (n h), xi_k = (k - n/2) * spacing so that xi = 0 is the
 * sample at k = n/2. The spatial grid is kept so that the inverse transform
 * lands back on the same x samples.
 */
class SpectralFunction {
public:
    SpectralFunction(Grid1D x_grid, std::vector<complex> values);

    const Grid1D& x_grid() const { return x_grid_; }
    const Grid1D& xi_grid() const { return xi_grid_; }
    std::span<const complex> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const complex& operator[](std::size_t k) const { return values_[k]; }

    /// Index of xi = 0.
    std::size_t zero_index() const { return values_.size() / 2; }

    /// The frequency samples as a SampledFunction over xi_grid.
    SampledFunction as_sampled() const { return SampledFunction(xi_grid_, values_); }

private:
    Grid1D x_grid_;
    Grid1D xi_grid_;
    std::vector<complex> values_;
};

/// Centered frequency grid for `x_grid` (requires an even sample count).
Grid1D reciprocal_grid(const Grid1D& x_grid);

/// FFT-based transform with the exp(-i xi x_min) phase and h / sqrt(2 pi)
/// amplitude factors. Warns (does not fail) when f has not decayed to
/// 1e-10 of its peak at the grid ends.
SpectralFunction forward_ft(const SampledFunction& f, Diagnostics* diag = nullptr);

/// Inverse of forward_ft on the same pair of grids.
SampledFunction inverse_ft(const SpectralFunction& F, Diagnostics* diag = nullptr);

/**
 * F(scale * xi_k) for scale in (0, 1], by band-limited interpolation: the
 * trigonometric interpolant through the frequency samples, evaluated as the
 * discrete transform of the underlying x-samples at the scaled frequencies.
 */
SpectralFunction spectral_resample(const SpectralFunction& F, double scale, Diagnostics* diag = nullptr);

/// Discrete continuous-transform sum h/sqrt(2 pi) * sum_j exp(-i xi x_j) f_j
/// evaluated at arbitrary frequencies (extended-precision accumulation).
std::vector<complex> ft_at(const SampledFunction& f, std::span<const double> xi);

/// The inverse sum dxi/sqrt(2 pi) * sum_k exp(i xi_k x) F_k at arbitrary x.
std::vector<complex> ift_at(const SpectralFunction& F, std::span<const double> x);

/// k-th derivative by multiplication with (i xi)^k. For odd k the Nyquist
/// mode is dropped so real input stays real.
SampledFunction spectral_derivative(const SampledFunction& f, int k);

/// Periodic band-limited translate g(x) = f(x + shift) via exp(i xi shift).
SampledFunction spectral_shift(const SampledFunction& f, double shift);

/// max |f| over the first and last `count` samples divided by max |f|.
double edge_ratio(std::span<const complex> values, std::size_t count = 1);

}  // namespace oscprop
