#pragma once

#include <complex>
#include <vector>

namespace halfline {

using cplx = std::complex<double>;

struct SampledFunction {
    std::vector<double> grid;
    std::vector<cplx> values;

    std::size_t size() const { return grid.size(); }
    void validate() const;  // throws InvalidInput
};

// Uniform grid lo, lo+step, ..., up to hi (inclusive within rounding).
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace halfline
