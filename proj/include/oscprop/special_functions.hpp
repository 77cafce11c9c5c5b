#pragma once

namespace oscprop {

/// Complementary error function in the normalization
///   Erfc(z) = integral_z^inf exp(-t^2) dt = (sqrt(pi)/2) * erfc(z),
/// defined for finite z >= 0.
double erfc_paper(double z);

/// sqrt(pi)/2: erfc_paper(z) = kErfcPaperScale * std::erfc(z).
inline constexpr double kErfcPaperScale = 0.88622692545275801365;

struct UEvalPolicy {
    /// Initial number of trapezoid panels of the log-substituted integral.
    int quadrature_points = 64;
    /// Below this z, non-integer c uses the Kummer M-series connection formula.
    double series_cutoff = 0.25;
    /// Stopping tolerance, relative to max(1, |U|). Must lie in [1e-14, 1e-6].
    double target_abs_error = 1e-13;
};

/**
 * Tricomi confluent hypergeometric function U(a, c, z) for a > 0, z > 0.
 *
 * Evaluated from U = (1/Gamma(a)) * int_0^inf exp(-z t) t^(a-1) (1+t)^(c-a-1) dt
 * after the substitution t = exp(u), which turns the integrand into a
 * smooth function with exponential decay on the left and double-exponential
 * decay on the right; the trapezoid rule is refined until two successive
 * levels agree. For small z and non-integer c the connection formula
 *   U = G(1-c)/G(a-c+1) M(a,c,z) + G(c-1)/G(a) z^(1-c) M(a-c+1, 2-c, z)
 * is used instead.
 */
double tricomi_u(double a, double c, double z, const UEvalPolicy& policy = {});

/// Same function, forcing the integral route (no series shortcut).
double tricomi_u_integral(double a, double c, double z, const UEvalPolicy& policy = {});

/// d/dz U(a, c, z) = -a U(a+1, c+1, z).
double tricomi_u_deriv(double a, double c, double z, const UEvalPolicy& policy = {});

/// Leading small-z term Gamma(c-1)/Gamma(a) * z^(1-c), valid for c > 1, c != 2.
/// U itself is singular at z = 0 in that range.
double tricomi_u_small_z(double a, double c, double z);

/// Kummer M(a, c, z) = 1F1(a; c; z) by its power series; c not a non-positive integer.
double kummer_m(double a, double c, double z);

}  // namespace oscprop
