#pragma once

#include <vector>

#include "halfline/potential.hpp"
#include "halfline/sampled.hpp"

namespace halfline {

// Fundamental matrix of -y'' + q y = 0 over a length L: [c s; q*s c] with
// c = cosh(eta L), s = sinh(eta L)/eta, eta^2 = q.
struct Transfer {
    cplx c, s, qs;
};
Transfer transfer(cplx q, double len);

struct Segment {
    double x0, x1, v;
};

struct SolutionPoint {
    cplx y, yp;
    cplx integral;  // forward: int_0^x y^2; backward: int_x^b y^2
};

// Runs of equal cells are merged into segments so that step potentials
// propagate in O(#steps) rather than O(#cells).
class Propagator {
public:
    explicit Propagator(const Potential& pot);

    double support() const { return b_; }
    const std::vector<Segment>& segments() const { return segs_; }

    // f(k,0), f'(k,0) for f = e^{ikx} on x >= b.
    void jost_at_zero(cplx k, cplx& f0, cplx& fp0) const;

    // Solution with data (y0, yp0) at x = 0 evaluated at ascending xs >= 0.
    // Beyond b the free equation is used.
    std::vector<SolutionPoint> forward(cplx k, cplx y0, cplx yp0, const std::vector<double>& xs,
                                       bool integrals) const;

    // Jost solution at ascending xs in [0, b], integrals accumulated from b down.
    std::vector<SolutionPoint> jost_backward(cplx k, const std::vector<double>& xs,
                                             bool integrals) const;

private:
    double b_;
    std::vector<Segment> segs_;

    std::vector<SolutionPoint> jost_backward_impl(cplx k, const std::vector<double>& xs, bool integrals) const;
};

}  // namespace halfline
