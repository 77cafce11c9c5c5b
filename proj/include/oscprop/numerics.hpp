#pragma once

#include <span>
#include <vector>

#include "oscprop/grid.hpp"

namespace oscprop {

/**
 * Quadrature weights for integrating a sampled function over the closed
 * interval [x_min, x_max] of a half-open grid.
 *
 * The missing sample at x_max is supplied by cubic extrapolation from the
 * last four samples and folded back into their weights. The closed panel is
 * then integrated with composite Simpson; when the interval count n is odd
 * the last three intervals use the Simpson 3/8 rule. The rule is exact for
 * cubics.
 */
std::vector<double> quadrature_weights(const Grid1D& grid);

/// Integral of f over [x_min, x_max].
complex quadrature(const SampledFunction& f);

/// Composite Simpson over `values` sampled on a closed uniform grid with
/// step h (3/8 closing panel for odd interval counts). Needs >= 4 samples.
complex simpson_closed(std::span<const complex> values, double h);

enum class OutOfRange { zero, clamp_stencil };

/**
 * Local Lagrange interpolation of grid data at an arbitrary x using
 * `order` consecutive samples around x.
 *
 * With OutOfRange::zero, samples outside the grid are treated as 0 (data
 * assumed decayed). With OutOfRange::clamp_stencil the stencil is moved
 * inward near the edges and points beyond the last sample return 0.
 */
complex lagrange_interpolate(const SampledFunction& f, double x, int order = 8,
                             OutOfRange policy = OutOfRange::clamp_stencil);

/// Shifted copy g(x_j) = f(x_j + shift) by local interpolation.
SampledFunction interpolate_shift(const SampledFunction& f, double shift, int order = 8,
                                  OutOfRange policy = OutOfRange::clamp_stencil);

/// Centered first derivative on interior points; edge values are 0.
/// `order` is 2, 4 or 6 (3, 5 or 7 points).
std::vector<complex> centered_derivative(const SampledFunction& f, int order = 2);

enum class OperatorTag { heat_ho, heat_dirac, wave_dirac, wave_ho };

/// A field sampled at t - dt, t and t + dt on one grid.
struct TimeSlices {
    SampledFunction before;
    SampledFunction now;
    SampledFunction after;
};

/**
 * Pointwise finite-difference residual of the heat or wave equation for the
 * oscillator (d^2/dx^2 - a^2 x^2) or the derivative operator d/dX, using
 * second-order centered stencils in x and t. Edge points are set to 0.
 *
 *   heat_*: (f(t+dt) - f(t-dt)) / 2dt - A f(t)
 *   wave_*: (f(t+dt) - 2 f(t) + f(t-dt)) / dt^2 - A f(t)
 */
SampledFunction fd_residual(const TimeSlices& field, OperatorTag op, double t, double dt, double a);

/// Largest |f_j| over points with |x_j| <= radius.
double sup_norm_within(const SampledFunction& f, double radius);

/// log2(coarse / fine): the convergence order observed when the step halves.
double observed_order(double coarse_error, double fine_error);

}  // namespace oscprop
