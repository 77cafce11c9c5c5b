#pragma once

#include <vector>

#include "oscprop/grid.hpp"

namespace oscprop {

constexpr int kMaxHermiteIndex = 256;

/**
 * Orthonormal Hermite function of the oscillator d^2/dx^2 - a^2 x^2:
 *
 *   h_n(x) = (a/pi)^{1/4} (2^n n!)^{-1/2} H_n(sqrt(a) x) exp(-a x^2 / 2),
 *
 * with eigenvalue -(2n+1) a. Evaluated by the three-term recurrence on the
 * normalized functions, rescaled as it goes so that neither the polynomial
 * growth nor the Gaussian underflows early.
 */
double hermite_fn(int n, double a, double x);

/// h_0(x), ..., h_N(x) in one recurrence pass.
std::vector<double> hermite_fns(int N, double a, double x);

/// h_n sampled on `grid`.
SampledFunction hermite_sampled(int n, double a, const Grid1D& grid);

/// Expansion of a sampled function in h_0..h_N of one coupling a.
struct SpectralCoefficients {
    double a = 1.0;
    Grid1D grid;
    std::vector<complex> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    /// |c_N| / max |c_n|.
    double tail() const;
};

/// c_n = quadrature(f h_n). Warns when the tail exceeds 1e-6.
SpectralCoefficients expand(const SampledFunction& f, double a, int N, Diagnostics* diag = nullptr);

/// Sum c_n m_n h_n on the expansion grid.
SampledFunction synthesize(const SpectralCoefficients& c, const std::vector<double>& multiplier);

SampledFunction reconstruct(const SpectralCoefficients& c);

/// exp(t L^a) acting mode-wise: sum exp(-(2n+1) a t) c_n h_n.
SampledFunction heat_oracle(const SpectralCoefficients& c, double t);

/// sin(t sqrt(L)) / sqrt(L) with lambda_n = (2n+1) a:
/// sum sin(t sqrt(lambda_n)) / sqrt(lambda_n) c_n h_n.
SampledFunction wave_oracle(const SpectralCoefficients& c, double t);

/// Time derivative of wave_oracle: sum cos(t sqrt(lambda_n)) c_n h_n.
SampledFunction wave_oracle_velocity(const SpectralCoefficients& c, double t);

}  // namespace oscprop
