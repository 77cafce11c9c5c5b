#pragma once

#include "oscprop/fourier.hpp"
#include "oscprop/grid.hpp"
#include "oscprop/report.hpp"

namespace oscprop {

/**
 * Discretization of the intertwining map. Each X in X_grid stands for the
 * pair of frequencies xi = +-exp(-2 a X); the X range must sit inside the
 * frequency band of x_grid, and its far end must reach frequencies below
 * the first nonzero sample of that band so that only xi = 0 is extrapolated.
 */
struct IntertwineParams {
    double a;
    Grid1D x_grid;
    Grid1D X_grid;

    /// exp(-2 a X_min): the largest frequency represented.
    double xi_max() const;
    /// exp(-2 a X_last) with X_last the last X sample.
    double xi_min() const;
};

IntertwineParams make_intertwine_params(double a, const Grid1D& x_grid, const Grid1D& X_grid);

constexpr double kSaTailTolerance = 1e-10;

/**
 * Parameters sized to phi: X_min is set by the largest |xi| where
 * |F[exp(-a x^2/2) phi]| still exceeds spectral_floor times its peak, and
 * the far end reaches xi = 1e-14.
 *
 * A floor of 1e-10 keeps T phi clean of rounding noise at the X_min end
 * (used for residual checks). Round trips through T^{-1} need the whole
 * resolved spectrum and use a floor near machine precision.
 */
IntertwineParams auto_intertwine_params(const SampledFunction& phi, double a, double spectral_floor = 1e-10,
                                        std::size_t n_X = 2048);

/// The two sign branches of T phi over X_grid.
struct BranchPair {
    SampledFunction plus;
    SampledFunction minus;
};

/// sqrt|xi| exp(xi^2 / 4a).
double weight(double xi, double a);

enum class DomainCheck { enforce, warn };

/**
 * (T phi)(X) = weight(xi, a) F[exp(-a x^2/2) phi](xi) at xi = +-exp(-2 a X).
 * The transform is summed directly at each xi in extended precision.
 *
 * The spectral tail beyond xi_max (sup relative to the peak) must be below
 * 1e-10; DomainCheck::enforce throws otherwise, DomainCheck::warn records it.
 */
BranchPair apply_T(const SampledFunction& phi, const IntertwineParams& p, Diagnostics* diag = nullptr,
                   DomainCheck check = DomainCheck::enforce, double* tail = nullptr);

/**
 * Reassembles F[exp(-a x^2/2) phi] on the reciprocal grid of x_grid from the
 * branches (xi = 0 from the far end of X_grid), inverts the transform and
 * removes the Gaussian damping.
 */
SampledFunction apply_T_inverse(const BranchPair& b, const IntertwineParams& p, Diagnostics* diag = nullptr);

/**
 * Multiplies a damped function g = exp(-a x^2/2) phi back by exp(a x^2/2).
 * `noise` is the absolute error level of g. Going outward from the peak, the
 * kept region ends where the local maximum of |g| (17-sample window) drops to
 * 4 noise; samples outside it, and samples inside below that level, are set
 * to zero instead of amplified.
 */
SampledFunction remove_gaussian_damping(const SampledFunction& g, double a, double noise);

/// Typical absolute error of an inverse transform of F whose samples carry
/// a few ulps of independent relative error.
double inverse_ft_noise(const SpectralFunction& F);

/// Largest |g| over the outermost 64 samples at each end: for damped data
/// whatever is left there is error, not signal.
double edge_level(const SampledFunction& g);

/// (d^2/dx^2 - a^2 x^2) phi with the derivative taken spectrally.
SampledFunction apply_oscillator(const SampledFunction& phi, double a);

/// (d^2/dx^2 + 2 a x d/dx + a) psi, spectrally.
SampledFunction apply_conjugated_oscillator(const SampledFunction& psi, double a);

/// D_X b on X_grid by the seven-point centered difference.
BranchPair branch_derivative(const BranchPair& b);

/**
 * Relative residual max over branches of ||T(L^a phi) - D_X(T phi)|| / ||D_X(T phi)||
 * on interior X points. Pass iff <= 1e-5; informational (with a warning) when
 * phi violates the spectral tail condition.
 */
VerificationReport intertwine_residual(const SampledFunction& phi, const IntertwineParams& p,
                                       Diagnostics* diag = nullptr);

}  // namespace oscprop
