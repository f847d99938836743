#pragma once

#include <utility>
#include <vector>

#include "halfline/potential.hpp"
#include "halfline/propagate.hpp"
#include "halfline/sampled.hpp"

namespace halfline {

struct BoundaryTrace {
    cplx k;
    cplx f0;   // f(k,0)
    cplx fp0;  // f'(k,0)
};

struct FullLineCoefficients {
    cplx k;
    cplx T, L, R;
    bool bound_state_pole = false;  // denominator vanished (k on positive imaginary axis)
};

BoundaryTrace jost_boundary_trace(const OperatorSpec& spec, cplx k);

cplx jost_function(const Boundary& bc, const BoundaryTrace& tr);
cplx jost_function(const OperatorSpec& spec, cplx k);

SampledFunction regular_solution(const OperatorSpec& spec, cplx k, const std::vector<double>& x);
SampledFunction jost_solution(const OperatorSpec& spec, cplx k, const std::vector<double>& x);

double h_function(const OperatorSpec& spec, double beta);

// H(beta) bound to one operator; avoids rebuilding the propagator per call.
class HEvaluator {
public:
    explicit HEvaluator(const OperatorSpec& spec) : prop_(spec.potential), bc_(spec.boundary) {}
    double operator()(double beta) const;
    double derivative(double beta) const;  // centered, step 1e-6 (1 + |beta|)

private:
    Propagator prop_;
    Boundary bc_;
};
// Centered difference with step 1e-6 (1 + |beta|).
double h_derivative(const OperatorSpec& spec, double beta);

bool is_exceptional(const OperatorSpec& spec);
cplx scattering_matrix(const OperatorSpec& spec, double k);

FullLineCoefficients full_line_coefficients(const OperatorSpec& spec, cplx k);

// Regular-solution and Jost-solution normalizations at a bound state.
std::pair<double, double> norming_constants(const OperatorSpec& spec, double gamma);

BoundStateSet bound_states(const OperatorSpec& spec, double beta_max);

// Upper bound on bound-state wavenumbers used when no window is given.
double default_beta_max(const OperatorSpec& spec);

SampledFunction sample_jost(const OperatorSpec& spec, const std::vector<double>& k);
SampledFunction sample_scattering(const OperatorSpec& spec, const std::vector<double>& k);
SampledFunction sample_abs_jost(const OperatorSpec& spec, const std::vector<double>& k);

// Newton refinement of a zero of H near beta (centered-difference slope).
// Returns false if the iteration wanders farther than max_move.
bool polish_zero(const OperatorSpec& spec, double& beta, double max_move);

}  // namespace halfline
