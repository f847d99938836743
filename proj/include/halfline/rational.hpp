#pragma once

#include <vector>

#include "halfline/sampled.hpp"

namespace halfline {

// Barycentric rational approximant produced by the AAA algorithm.
struct RationalApprox {
    std::vector<cplx> z, f, w;
    double max_error = 0.0;  // on the fitted samples

    cplx operator()(cplx x) const;
    std::vector<cplx> poles() const;
    cplx residue(cplx pole) const;

private:
    cplx denominator(cplx x) const;
    cplx denominator_slope(cplx x) const;
};

// Stops when max |F - r| <= tol * max |F| or the degree reaches max_degree.
RationalApprox aaa(const std::vector<cplx>& Z, const std::vector<cplx>& F, double tol, std::size_t max_degree);

}  // namespace halfline
