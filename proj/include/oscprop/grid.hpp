#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscprop {

using complex = std::complex<double>;

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Collects non-fatal findings (insufficient decay, truncated windows, ...)
/// produced while an operation runs.
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
    bool empty() const { return warnings.empty(); }
};

inline void warn(Diagnostics* diag, std::string message) {
    if (diag != nullptr) diag->warn(std::move(message));
}

/**
 * Uniform half-open grid: x_j = x_min + j * spacing, j = 0..n-1, with
 * spacing = (x_max - x_min) / n. The point x_max itself is not a sample.
 *
 * The same convention is used for spatial axes and for the centered
 * frequency axis produced by the Fourier module, so the two grids line up
 * index-for-index with the FFT.
 */
class Grid1D {
public:
    static constexpr std::size_t kMinPoints = 8;

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n() const { return n_; }
    double spacing() const { return spacing_; }
    double length() const { return x_max_ - x_min_; }

    double point(std::size_t j) const {
        return static_cast<double>(static_cast<std::ptrdiff_t>(j) - zero_index_) * spacing_ + offset_;
    }
    std::vector<double> points() const;

    /// Grid with a prescribed spacing; x_max is derived as x_min + n * spacing.
    static Grid1D from_spacing(double x_min, double spacing, std::size_t n);

    /// Points (j - n/2) * spacing for even n, computed from the index so that
    /// samples near 0 carry only relative rounding.
    static Grid1D centered(double spacing, std::size_t n);

    friend Grid1D make_grid(double x_min, double x_max, std::int64_t n);

    bool operator==(const Grid1D&) const = default;

private:
    Grid1D(double x_min, double x_max, std::size_t n, double spacing, std::ptrdiff_t zero_index = 0)
        : x_min_(x_min), x_max_(x_max), n_(n), spacing_(spacing), zero_index_(zero_index),
          offset_(zero_index == 0 ? x_min : 0.0) {}

    double x_min_;
    double x_max_;
    std::size_t n_;
    double spacing_;
    std::ptrdiff_t zero_index_;
    double offset_;
};

/// Rejects reversed or non-finite bounds and n < 8.
Grid1D make_grid(double x_min, double x_max, std::int64_t n);

/// Complex samples attached to a grid. Values are always finite.
class SampledFunction {
public:
    SampledFunction(Grid1D grid, std::vector<complex> values);

    /// All-zero function on `grid`.
    explicit SampledFunction(Grid1D grid);

    template <class F>
    static SampledFunction sample(const Grid1D& grid, F&& f) {
        std::vector<complex> v(grid.n());
        for (std::size_t j = 0; j < grid.n(); ++j) v[j] = complex(f(grid.point(j)));
        return SampledFunction(grid, std::move(v));
    }

    const Grid1D& grid() const { return grid_; }
    std::span<const complex> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const complex& operator[](std::size_t j) const { return values_[j]; }

    /// Pointwise map, result re-validated for finiteness.
    SampledFunction map(const std::function<complex(double x, complex v)>& f) const;

    SampledFunction& operator+=(const SampledFunction& other);
    SampledFunction& operator-=(const SampledFunction& other);
    SampledFunction& operator*=(complex scale);

    double sup_norm() const;
    /// sqrt of the quadrature of |f|^2.
    double l2_norm() const;

private:
    Grid1D grid_;
    std::vector<complex> values_;
};

SampledFunction operator+(SampledFunction a, const SampledFunction& b);
SampledFunction operator-(SampledFunction a, const SampledFunction& b);
SampledFunction operator*(complex s, SampledFunction f);

/// ||a - b||_2 / ||b||_2 (falls back to the absolute error when b == 0).
double relative_l2_error(const SampledFunction& a, const SampledFunction& b);
double relative_sup_error(const SampledFunction& a, const SampledFunction& b);

}  // namespace oscprop
