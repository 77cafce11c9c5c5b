#pragma once

#include "oscprop/grid.hpp"

namespace oscprop {

/// U(t, X) = U0(X + t) by a band-limited (periodic) shift. Warns when data
/// that has not decayed wraps around the grid.
SampledFunction heat_dirac(const SampledFunction& U0, double t, Diagnostics* diag = nullptr);

/// (2/sqrt(pi)) Erfc(t / sqrt(4|X - Xp|)), Erfc(z) = int_z^inf exp(-u^2) du.
double wave_kernel_dirac(double t, double X, double Xp);

/// t / sqrt(4 pi |X - Xp|) exp(-z) U(1, 3/2, z), z = t^2 / (4|X - Xp|).
double wave_kernel_dirac_u(double t, double X, double Xp);

/**
 * V(t, X) = integral over |X - X'| < t/2 of W(t, X, X') V0(X') dX'.
 *
 * Integrated in s = 2(X' - X)/t, where the kernel is erfc(sqrt(t / 2|s|)):
 * Gauss-Legendre on panels graded geometrically toward s = 0 (below
 * s = t/80 the kernel is under 1e-18 and is dropped), V0 read off the grid
 * by 10-point Lagrange interpolation with zero outside. t = 0 gives 0.
 * Throws when the window t/2 exceeds half the grid length.
 */
SampledFunction wave_dirac(const SampledFunction& V0, double t, Diagnostics* diag = nullptr);

/// Same integral in the substitution form
///   C t^{3/2} int_{-1}^{1} V0(X + s t/2) |s|^{-1/2} exp(-z) U(1, 3/2, z) ds,
/// z = t / 2|s|, C = 2^{-1/2} / sqrt(4 pi), with the kernel through tricomi_u.
SampledFunction wave_dirac_substituted(const SampledFunction& V0, double t, Diagnostics* diag = nullptr);

/// 1 - V(t)/t for V0 = 1: 1 - [(1 + 2c) erfc(sqrt c) - 2 sqrt(c/pi) exp(-c)], c = t/2.
double constant_data_deficit(double t);

/// m(t, z) = sum (-1)^n t^{2n+1} z^n / (2n+1)! = sin(t sqrt z) / sqrt z.
complex wave_multiplier(double t, complex z);

/// Largest t sqrt(R/2) accepted by the spectral oracle (|m| <= ~1e10).
constexpr double kWaveGrowthGuard = 25.0;

/**
 * Spectral solution of d_t^2 V = d_X V, V(0) = 0, d_t V(0) = V0:
 * Vhat(t, xi) = m(t, -i xi) Vhat0(xi). Frequencies where |Vhat0| < 1e-14 of
 * its peak are dropped; the remaining radius R must satisfy t sqrt(R/2) <= 25.
 */
SampledFunction spectral_wave_oracle_dirac(const SampledFunction& V0, double t, Diagnostics* diag = nullptr);

}  // namespace oscprop
