#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oscprop/fourier.hpp"
#include "oscprop/numerics.hpp"

using namespace oscprop;

namespace {

double sup_diff(const SpectralFunction& F, auto&& exact) {
    double m = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) m = std::max(m, std::abs(F[k] - complex(exact(F.xi_grid().point(k)))));
    return m;
}

double sup_diff(const SampledFunction& f, auto&& exact) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j] - complex(exact(f.grid().point(j)))));
    return m;
}

SampledFunction random_gaussian_mixture(const Grid1D& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::array<double, 4>> terms(6);
    for (auto& t : terms) t = {u(rng), u(rng), 3.0 * u(rng), 0.6 + 0.4 * std::abs(u(rng))};
    return SampledFunction::sample(g, [&](double x) {
        complex s(0.0);
        for (const auto& t : terms) s += complex(t[0], t[1]) * std::exp(-std::pow((x - t[2]) / t[3], 2));
        return s;
    });
}

}  // namespace

TEST_CASE("reciprocal grid is centered with exact spacing and needs even n") {
    const auto g = make_grid(-5.0, 7.0, 64);
    const auto xi = reciprocal_grid(g);
    CHECK(xi.spacing() == doctest::Approx(2.0 * std::numbers::pi / (64 * g.spacing())).epsilon(1e-15));
    CHECK(xi.point(32) == 0.0);
    CHECK_THROWS_AS(reciprocal_grid(make_grid(0.0, 1.0, 9)), PreconditionError);
}

TEST_CASE("forward_ft examples") {
    const auto g = make_grid(-20.0, 20.0, 512);
    const auto gauss_half = SampledFunction::sample(g, [](double x) { return std::exp(-x * x / 2.0); });
    CHECK(sup_diff(forward_ft(gauss_half), [](double xi) { return std::exp(-xi * xi / 2.0); }) < 1e-12);

    const auto gauss = SampledFunction::sample(g, [](double x) { return std::exp(-x * x); });
    const auto F = forward_ft(gauss);
    CHECK(std::abs(F[F.zero_index()] - 1.0 / std::sqrt(2.0)) < 1e-13);

    // Off-centre grid: phase correction for x_min != 0.
    const auto shifted_grid = make_grid(-13.0, 27.0, 512);
    const auto moved = SampledFunction::sample(shifted_grid, [](double x) { return std::exp(-(x - 3.0) * (x - 3.0) / 2.0); });
    CHECK(sup_diff(forward_ft(moved), [](double xi) { return std::exp(-xi * xi / 2.0) * std::polar(1.0, -3.0 * xi); }) <
          1e-12);
}

TEST_CASE("scaling law F[f(alpha x)](xi) = F f(xi/alpha) / alpha") {
    const auto g = make_grid(-30.0, 30.0, 1024);
    auto f0 = [](double x) { return std::exp(-x * x / 2.0) * (1.0 + 0.3 * x); };
    const auto base = SampledFunction::sample(g, f0);
    for (double alpha : {2.0, 3.0, 0.5}) {
        const auto scaled = SampledFunction::sample(g, [&](double x) { return f0(alpha * x); });
        const auto lhs = forward_ft(scaled);
        std::vector<double> xi_over(g.n());
        for (std::size_t k = 0; k < g.n(); ++k) xi_over[k] = lhs.xi_grid().point(k) / alpha;
        const auto rhs = ft_at(base, xi_over);
        double err = 0.0;
        const double band = std::abs(lhs.xi_grid().point(0));
        for (std::size_t k = 0; k < g.n(); ++k) {
            if (std::abs(xi_over[k]) < band) err = std::max(err, std::abs(lhs[k] - rhs[k] / alpha));
        }
        CHECK(err <= 1e-8);
    }
    // f = f0(x/2) -> 2 (F f0)(2 xi)
    const auto half = SampledFunction::sample(g, [&](double x) { return f0(x / 2.0); });
    const auto Fh = forward_ft(half);
    std::vector<double> twice(g.n());
    for (std::size_t k = 0; k < g.n(); ++k) twice[k] = 2.0 * Fh.xi_grid().point(k);
    const auto ref = ft_at(base, twice);
    for (std::size_t k = 0; k < g.n(); k += 7) {
        if (std::abs(twice[k]) < std::abs(Fh.xi_grid().point(0))) CHECK(std::abs(Fh[k] - 2.0 * ref[k]) < 1e-8);
    }
}

TEST_CASE("Gaussian inverse identity F^-1[exp(-s xi^2)] = exp(-x^2/4s)/sqrt(2s)") {
    const auto g = make_grid(-30.0, 30.0, 1024);
    for (double s : {0.25, 0.5, 1.0, 2.0}) {
        std::vector<complex> v(g.n());
        const auto xi = reciprocal_grid(g);
        for (std::size_t k = 0; k < g.n(); ++k) v[k] = std::exp(-s * xi.point(k) * xi.point(k));
        const auto f = inverse_ft(SpectralFunction(g, v));
        CHECK(sup_diff(f, [&](double x) { return std::exp(-x * x / (4.0 * s)) / std::sqrt(2.0 * s); }) <= 1e-10);
    }
    // The two listed cases explicitly.
    std::vector<complex> q(g.n());
    const auto xi = reciprocal_grid(g);
    for (std::size_t k = 0; k < g.n(); ++k) q[k] = std::exp(-0.25 * xi.point(k) * xi.point(k));
    CHECK(sup_diff(inverse_ft(SpectralFunction(g, q)), [](double x) { return std::sqrt(2.0) * std::exp(-x * x); }) < 1e-12);
}

TEST_CASE("round trip and Parseval on random band-limited data") {
    for (unsigned seed = 1; seed <= 10; ++seed) {
        const auto g = make_grid(-16.0, 16.0, 256 + 2 * seed);
        const auto f = random_gaussian_mixture(g, seed);
        const auto F = forward_ft(f);
        const auto back = inverse_ft(F);
        CHECK(relative_l2_error(back, f) <= 1e-12);

        const double spatial = f.l2_norm();
        const double spectral = F.as_sampled().l2_norm();
        CHECK(std::abs(spatial - spectral) <= 1e-10 * spatial);
    }
}

TEST_CASE("forward_ft warns on insufficient decay without failing") {
    const auto g = make_grid(-2.0, 2.0, 64);
    Diagnostics diag;
    forward_ft(SampledFunction::sample(g, [](double x) { return std::exp(-x * x / 8.0); }), &diag);
    CHECK_FALSE(diag.empty());
}

TEST_CASE("spectral_resample") {
    const auto g = make_grid(-20.0, 20.0, 512);
    const auto xi = reciprocal_grid(g);
    std::vector<complex> v(g.n());
    for (std::size_t k = 0; k < g.n(); ++k) v[k] = std::exp(-xi.point(k) * xi.point(k));
    const SpectralFunction F(g, v);

    const auto same = spectral_resample(F, 1.0);
    for (std::size_t k = 0; k < g.n(); ++k) CHECK(same[k] == F[k]);

    const auto half = spectral_resample(F, 0.5);
    CHECK(sup_diff(half, [](double w) { return std::exp(-w * w / 4.0); }) <= 1e-8);

    CHECK_THROWS_AS(spectral_resample(F, 1.5), PreconditionError);
    CHECK_THROWS_AS(spectral_resample(F, 0.0), PreconditionError);

    // Energy piled against the band edge: warning plus visible degradation.
    const double edge = xi.point(0);
    std::vector<complex> e(g.n());
    for (std::size_t k = 0; k < g.n(); ++k) e[k] = std::exp(-std::pow(std::abs(xi.point(k)) - 0.98 * std::abs(edge), 2));
    Diagnostics diag;
    const auto degraded = spectral_resample(SpectralFunction(g, e), 0.9, &diag);
    CHECK_FALSE(diag.empty());
    const double err = sup_diff(degraded, [&](double w) {
        return std::exp(-std::pow(std::abs(0.9 * w) - 0.98 * std::abs(edge), 2));
    });
    CHECK(err > 1e-6);
}

TEST_CASE("spectral derivative and shift on a Gaussian") {
    const auto g = make_grid(-15.0, 15.0, 256);
    const auto f = SampledFunction::sample(g, [](double x) { return std::exp(-x * x); });
    const auto d2 = spectral_derivative(f, 2);
    CHECK(sup_diff(d2, [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); }) < 1e-11);
    const auto shifted = spectral_shift(f, 1.25);
    CHECK(sup_diff(shifted, [](double x) { return std::exp(-(x + 1.25) * (x + 1.25)); }) < 1e-12);
}
