#pragma once

#include "oscprop/grid.hpp"
#include "oscprop/intertwining.hpp"

namespace oscprop {

struct OscillatorParams {
    double a;
    double t;
};

enum class HeatKernelVariant { mehler, paper_literal, paper_corrected };

const char* to_string(HeatKernelVariant v);

/// Largest a t accepted by the kernels.
constexpr double kMaxAt = 300.0;

/**
 * log of the oscillator heat kernel.
 *
 *   mehler:          sqrt(a / (2 pi sinh 2at)) exp[-(a/2)(x^2 + x'^2) coth 2at + a x x' / sinh 2at]
 *   paper_literal:   a sqrt(2/pi) (e^{2at} - e^{-2at})^{-1/2}
 *                      exp[(e^{at} x - e^{-at} x')^2 / (e^{2at} - e^{-2at}) + (a/2)(x^2 - x'^2)]
 *   paper_corrected: as paper_literal with prefactor sqrt(a/pi) and the square
 *                    term multiplied by -a.
 */
double heat_kernel_log(HeatKernelVariant variant, const OscillatorParams& p, double x, double xp);

/// exp(heat_kernel_log). The literal variant can overflow to +inf.
double heat_kernel(HeatKernelVariant variant, const OscillatorParams& p, double x, double xp);

/// u(t, x_i) = sum_j w_j K(t, x_i, x_j) u0(x_j) with the grid quadrature weights.
SampledFunction heat_ho_kernel_route(const SampledFunction& u0, const OscillatorParams& p,
                                     HeatKernelVariant variant = HeatKernelVariant::mehler,
                                     Diagnostics* diag = nullptr);

/**
 * u(t) = e^{-at} e^{a x^2/2} F^{-1}[exp(-(1 - e^{-4at}) xi^2 / 4a) G(xi e^{-2at})],
 * G = F[e^{-a x^2/2} u0], the rescaled spectrum by band-limited resampling.
 * Throws when G has not decayed to 1e-10 of its peak at the band edges.
 */
SampledFunction heat_ho_spectral_route(const SampledFunction& u0, const OscillatorParams& p,
                                       Diagnostics* diag = nullptr);

/**
 * T^{-1} of the translated branches b(X + t). Each branch is translated by
 * 12-point Lagrange interpolation; past the far end of the X grid it is
 * continued by b(X_last) exp(-a (X - X_last)), the xi -> 0 behaviour of
 * sqrt|xi| G(xi).
 */
SampledFunction heat_via_intertwining(const SampledFunction& u0, const OscillatorParams& p,
                                      Diagnostics* diag = nullptr);

/// Same pipeline on given parameters.
SampledFunction heat_via_intertwining(const SampledFunction& u0, const OscillatorParams& p,
                                      const IntertwineParams& ip, Diagnostics* diag = nullptr);

enum class WaveForm { corrected, paper_literal };

const char* to_string(WaveForm f);

/**
 * Oscillator wave solution v(t) with v(0) = 0, v_t(0) = v0.
 *
 * corrected: T^{-1} wave_dirac T. The branches are continued past the far X
 *   end by their exponential tail and by 0 below X_min. Warns when the
 *   window reaches frequencies e^{at} xi_max where the damped spectrum of v0
 *   is still above 1e-8 of its peak: those are not resolved on the grid.
 * paper_literal: the formula as stated, xi > 0 only, F[e^{+a x^2/2} v0], and
 *   sqrt(xi), sqrt(xi') unsigned, integrated in sigma = ln(xi'/xi) with the
 *   inner frequencies limited to the resolved band of v0.
 */
SampledFunction wave_ho(const SampledFunction& v0, const OscillatorParams& p, WaveForm form = WaveForm::corrected,
                        Diagnostics* diag = nullptr);

}  // namespace oscprop
