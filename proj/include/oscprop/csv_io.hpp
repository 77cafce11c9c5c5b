#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "oscprop/grid.hpp"

namespace oscprop {

/// 17 significant digits, shortest form of std::to_chars general format.
std::string format_double(double v);

/**
 * Reads `x,re,im` (or `x,re`) CSV into a function on a uniform grid. The x
 * column must be strictly increasing with constant spacing to within 1e-9
 * of the spacing; errors name the offending line.
 */
SampledFunction read_function_csv(std::istream& in);
SampledFunction read_function_csv(const std::string& path);

void write_function_csv(const SampledFunction& f, std::ostream& out);
void write_function_csv(const SampledFunction& f, const std::string& path);

/// `x,xp,value` rows for all pairs of grid points, x outer.
void write_kernel_csv(const Grid1D& grid, const std::function<double(double, double)>& kernel, std::ostream& out);

}  // namespace oscprop
