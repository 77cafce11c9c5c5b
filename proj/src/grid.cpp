#include "oscprop/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscprop/numerics.hpp"

namespace oscprop {

std::vector<double> Grid1D::points() const {
    std::vector<double> p(n_);
    for (std::size_t j = 0; j < n_; ++j) p[j] = point(j);
    return p;
}

Grid1D Grid1D::from_spacing(double x_min, double spacing, std::size_t n) {
    if (!std::isfinite(x_min) || !std::isfinite(spacing) || spacing <= 0.0)
        throw PreconditionError("grid spacing must be finite and positive");
    if (n < kMinPoints) throw PreconditionError("grid needs at least 8 points");
    return Grid1D(x_min, x_min + static_cast<double>(n) * spacing, n, spacing);
}

Grid1D Grid1D::centered(double spacing, std::size_t n) {
    if (!std::isfinite(spacing) || spacing <= 0.0) throw PreconditionError("grid spacing must be finite and positive");
    if (n < kMinPoints) throw PreconditionError("grid needs at least 8 points");
    if (n % 2 != 0) throw PreconditionError("centered grids need an even number of points");
    const double half = static_cast<double>(n / 2) * spacing;
    return Grid1D(-half, half, n, spacing, static_cast<std::ptrdiff_t>(n / 2));
}

Grid1D make_grid(double x_min, double x_max, std::int64_t n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw PreconditionError("grid bounds must be finite");
    if (!(x_min < x_max)) {
        std::ostringstream msg;
        msg << "grid bounds reversed or empty: [" << x_min << ", " << x_max << "]";
        throw PreconditionError(msg.str());
    }
    if (n < static_cast<std::int64_t>(Grid1D::kMinPoints))
        throw PreconditionError("grid needs at least 8 points, got " + std::to_string(n));
    const auto count = static_cast<std::size_t>(n);
    return Grid1D(x_min, x_max, count, (x_max - x_min) / static_cast<double>(count));
}

namespace {

void require_finite(std::span<const complex> values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag()))
            throw std::domain_error("non-finite sample at index " + std::to_string(j));
    }
}

void require_same_grid(const SampledFunction& a, const SampledFunction& b) {
    if (!(a.grid() == b.grid())) throw PreconditionError("sampled functions live on different grids");
}

}  // namespace

SampledFunction::SampledFunction(Grid1D grid, std::vector<complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n())
        throw PreconditionError("sample count " + std::to_string(values_.size()) +
                                " does not match grid size " + std::to_string(grid_.n()));
    require_finite(values_);
}

SampledFunction::SampledFunction(Grid1D grid) : grid_(grid), values_(grid.n(), complex(0.0)) {}

SampledFunction SampledFunction::map(const std::function<complex(double, complex)>& f) const {
    std::vector<complex> out(values_.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f(grid_.point(j), values_[j]);
    return SampledFunction(grid_, std::move(out));
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& other) {
    require_same_grid(*this, other);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    require_finite(values_);
    return *this;
}

SampledFunction& SampledFunction::operator-=(const SampledFunction& other) {
    require_same_grid(*this, other);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    require_finite(values_);
    return *this;
}

SampledFunction& SampledFunction::operator*=(complex scale) {
    for (auto& v : values_) v *= scale;
    require_finite(values_);
    return *this;
}

double SampledFunction::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction::l2_norm() const {
    const auto w = quadrature_weights(grid_);
    double s = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) s += w[j] * std::norm(values_[j]);
    // Extrapolated end weights can be negative; a tiny negative total means 0.
    return std::sqrt(std::max(s, 0.0));
}

SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
SampledFunction operator*(complex s, SampledFunction f) { return f *= s; }

double relative_l2_error(const SampledFunction& a, const SampledFunction& b) {
    const double err = (a - b).l2_norm();
    const double ref = b.l2_norm();
    return ref > 0.0 ? err / ref : err;
}

double relative_sup_error(const SampledFunction& a, const SampledFunction& b) {
    const double err = (a - b).sup_norm();
    const double ref = b.sup_norm();
    return ref > 0.0 ? err / ref : err;
}

}  // namespace oscprop
