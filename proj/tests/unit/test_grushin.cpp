#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oscprop/grushin.hpp"
#include "oscprop/oscillator.hpp"

using namespace oscprop;

namespace {

const GrushinPoint kPoint{0.3, 0.7, -0.2, 0.1, 0.5};

// (1/pi) int_0^inf cos((y - y') a) H_a(t, x, x') da by exp-sinh quadrature.
double grushin_by_quadrature(const GrushinPoint& p) {
    boost::math::quadrature::exp_sinh<double> q;
    auto f = [&](double a) {
        if (a == 0.0 || a * p.t > 300.0) return 0.0;
        return std::cos((p.y - p.yp) * a) * heat_kernel(HeatKernelVariant::mehler, {a, p.t}, p.x, p.xp);
    };
    return q.integrate(f, 1e-13) / std::numbers::pi;
}

}  // namespace

TEST_CASE("grushin kernel at the reference point") {
    const double a_max = suggest_a_max(kPoint);
    const complex k = grushin_heat_kernel(kPoint, a_max, 2049);
    CHECK(std::abs(k.imag()) <= 1e-10);
    CHECK(k.real() > 0.0);
    CHECK(k.real() == doctest::Approx(grushin_by_quadrature(kPoint)).epsilon(1e-9));
    const complex finer = grushin_heat_kernel(kPoint, a_max, 4097);
    CHECK(std::abs(finer - k) <= 1e-8 * std::abs(finer));
}

TEST_CASE("grushin kernel symmetry and translation invariance") {
    const double a_max = suggest_a_max(kPoint);
    const GrushinPoint swapped{kPoint.xp, kPoint.yp, kPoint.x, kPoint.y, kPoint.t};
    CHECK(std::abs(grushin_heat_kernel(kPoint, a_max, 2049) - grushin_heat_kernel(swapped, a_max, 2049)) <= 1e-10);
    const GrushinPoint shifted{kPoint.x, kPoint.y + 3.0, kPoint.xp, kPoint.yp + 3.0, kPoint.t};
    const complex k = grushin_heat_kernel(kPoint, a_max, 2049);
    CHECK(std::abs(grushin_heat_kernel(shifted, a_max, 2049) - k) <= 1e-12 * std::abs(k));
}

TEST_CASE("grushin kernel decreases along a ray") {
    double prev = 1e300;
    for (double r = 0.0; r <= 3.0; r += 0.25) {
        const GrushinPoint p{r, 0.0, r, 0.0, 0.5};
        const double k = grushin_heat_kernel(p, suggest_a_max(p), 2049).real();
        CHECK(k > 0.0);
        CHECK(k < prev);
        prev = k;
    }
}

TEST_CASE("grushin kernel converged refinement") {
    const complex k = grushin_heat_kernel_converged(kPoint, suggest_a_max(kPoint));
    CHECK(k.real() == doctest::Approx(grushin_by_quadrature(kPoint)).epsilon(1e-9));
}

TEST_CASE("grushin kernel preconditions") {
    CHECK_THROWS_AS(grushin_heat_kernel(kPoint, 2.0, 2049), PreconditionError);
    CHECK_THROWS_AS(grushin_heat_kernel(kPoint, 80.0, 128), PreconditionError);
    CHECK_THROWS_AS(grushin_heat_kernel(kPoint, 80.0, 65), PreconditionError);
    CHECK_THROWS_AS(grushin_heat_kernel({0, 0, 0, 0, 0.0}, 80.0, 129), PreconditionError);
    CHECK_THROWS_AS(grushin_heat_kernel_converged(kPoint, suggest_a_max(kPoint), 129, 1e-10, 0), PreconditionError);
}
