#pragma once

#include <cmath>
#include <complex>

// Closed forms for a single constant cell v on [0, b], f = e^{ikx} beyond b.
namespace oracle {

using cplx = std::complex<double>;

struct Trace {
    cplx f0, fp0;
};

inline Trace one_cell(double v, double b, cplx k) {
    const cplx q = std::sqrt(k * k - v);
    const cplx e = std::exp(cplx(0.0, 1.0) * k * b);
    const cplx I(0.0, 1.0);
    if (std::abs(q) < 1e-12) return {e * (1.0 - I * k * b), e * I * k};
    return {e * (std::cos(q * b) - I * k / q * std::sin(q * b)), e * (q * std::sin(q * b) + I * k * std::cos(q * b))};
}

inline cplx jost(double v, double b, bool dirichlet, double cot, cplx k) {
    const auto t = one_cell(v, b, k);
    return dirichlet ? t.f0 : cplx(0.0, -1.0) * (t.fp0 + cot * t.f0);
}

}  // namespace oracle
