#pragma once

#include "halfline/potential.hpp"
#include "halfline/sampled.hpp"

namespace halfline {

enum class Direction { Add, Remove };

struct DarbouxOptions {
    int refine = 64;                // output cells per input cell
    std::size_t max_cells = 65536;  // refinement stops growing the grid here
};

struct DarbouxResult {
    OperatorSpec spec;
    double gamma = 0.0;      // polished wavenumber actually used
    double g_squared = 0.0;
    BoundState bound_state;  // added or removed state
    double support_residual = 0.0;  // max |V_new| sampled on (b, 2b]
};

double support_preserving_norming_constant(const OperatorSpec& spec, double gamma);

DarbouxResult add_bound_state(const OperatorSpec& spec, double gamma, const DarbouxOptions& opt = {});
// g must match the norming constant of the bound state to 1e-6 relative.
DarbouxResult remove_bound_state(const OperatorSpec& spec, double gamma, double g,
                                 const DarbouxOptions& opt = {});

SampledFunction transform_jost(const SampledFunction& F, double gamma, Direction dir);
SampledFunction transform_scattering(const SampledFunction& S, double gamma, Direction dir = Direction::Add);

// Pointwise transformed potential V_old(x) -/+ d/dx [2 g^2 phi^2 / (1 +/- g^2 int_0^x phi^2)].
// A removal uses the equivalent 2 f^2 / int_x^infinity f^2 with the Jost solution f at k = i gamma,
// which holds when g is the norming constant of the bound state; g_squared is then unused.
std::vector<double> transformed_potential_at(const OperatorSpec& spec, double gamma, double g_squared,
                                             Direction dir, const std::vector<double>& x);

}  // namespace halfline
