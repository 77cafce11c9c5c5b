#pragma once

#include "oscprop/grid.hpp"

namespace oscprop {

struct GrushinPoint {
    double x;
    double y;
    double xp;
    double yp;
    double t;
};

/// Integrand magnitudes at +-a_max must be below this fraction of the peak.
constexpr double kGrushinDecay = 1e-12;

/**
 * Heat kernel of d_x^2 + x^2 d_y^2:
 *
 *   (1/2pi) int e^{i (y - y') a} H_{|a|}(t, x, x') da
 *
 * with H the Mehler kernel and the free kernel exp(-(x-x')^2/4t)/sqrt(4 pi t)
 * at a = 0, by Simpson on n_a (odd, >= 129) nodes placed symmetrically in a.
 * Throws when the integrand has not decayed at +-a_max.
 */
complex grushin_heat_kernel(const GrushinPoint& p, double a_max, int n_a);

/// Smallest a (on a 1/16 step) beyond which H_a(t, x, x') stays below
/// kGrushinDecay of its maximum, with a 10% margin.
double suggest_a_max(const GrushinPoint& p);

/// Doubles the node count (keeping the nodes nested) from n_a until two
/// successive values agree to rel_tol; throws after max_doublings.
complex grushin_heat_kernel_converged(const GrushinPoint& p, double a_max, int n_a = 129, double rel_tol = 1e-10,
                                      int max_doublings = 8);

}  // namespace oscprop
