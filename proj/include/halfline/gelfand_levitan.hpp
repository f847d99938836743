#pragma once

#include <limits>
#include <vector>

#include "halfline/fourier.hpp"
#include "halfline/marchenko.hpp"
#include "halfline/potential.hpp"
#include "halfline/sampled.hpp"

namespace halfline {

struct GLOptions {
    double taper_fraction = 0.05;
    int tail_terms = 5;
    double tail_lambda = 1.0;
    double support = 0.0;  // jump sites in the tail model are searched up to here; 0 disables them
    int solver_cells = 256;  // coarse Nystrom grid; a grid twice as fine is solved for extrapolation
    int outer_terms = 8;  // analytic tail model of log|F|
    double outer_lambda = 3.0;
    // rational fit of the base scattering function for its resonance poles
    double fit_kmax = 40.0;
    double fit_step = 0.05;
    double fit_tol = 1e-12;
    std::size_t fit_max_degree = 200;
};

// |F| ~ |k| (non-Dirichlet) against |F| ~ 1 (Dirichlet) over the top decade of the grid.
ThetaClass detect_theta_class(const SampledFunction& absF);

// Jost function with modulus |F| on the real axis and no zeros in the upper half-plane.
// log(|F| / |prefactor|) is split into the real part of an analytic large-k model, whose
// conjugate is exact, and a remainder that is negligible beyond the grid.
class OuterJost {
public:
    // Oscillations in the tail model are searched up to 2 support (none when support is 0).
    OuterJost(const SampledFunction& absF, ThetaClass cls, double support = 0.0, int terms = 8, double lambda = 3.0);
    cplx operator()(cplx k) const;  // Im k >= 0; real k is the boundary value from above
    std::vector<cplx> on_grid() const;  // at the k >= 0 samples
    const std::vector<double>& grid() const { return k_; }
    bool exceptional() const { return exceptional_; }
    double tail_residual() const { return tail_.residual; }

private:
    cplx prefactor(cplx k) const;
    double remainder_at(double k) const;
    double pv_integral(double k) const;
    double node_pv(std::size_t j) const;  // on a uniform grid, alternate-node rule at t_[j]

    ThetaClass cls_;
    bool exceptional_ = false;
    double lambda_;
    AnalyticTail tail_;
    std::vector<double> k_;  // k >= 0 samples
    std::vector<double> t_;  // symmetric grid
    std::vector<double> r_;  // log(|F| / |prefactor|) - Re tail on t_
    std::vector<double> w_;  // trapezoid weights
    double step_ = 0.0;      // > 0 when t_ is uniform
    std::size_t zero_ = 0;   // index in t_ of k_[0]
};

cplx outer_jost(const SampledFunction& absF, ThetaClass cls, cplx k);

// S(k;0) = conj F(k;0) / F(k;0) on the k >= 0 samples.
SampledFunction base_scattering(const OuterJost& F0);

// Zero k = -i gamma of F(k;0), found as a pole of S(k;0) e^{2ik support}. The position is
// then refined on S(k;0) ((k + i gamma)/(k - i gamma))^2, where the zero of S(k;0) at i gamma
// and the added double pole leave a simple pole only when gamma is exact.
struct BaseResonance {
    double gamma = 0.0;
    cplx residue;            // of S(k;0) e^{2ik support} at -i gamma, first fit
    cplx added_residue;      // of S(k;0) ((k + i gamma)/(k - i gamma))^2 at i gamma
    double m_squared = 0.0;  // norming constant after adding this state alone
    bool eligible = false;   // the added state has the boundary class of the data
    double last_step = 0.0;  // size of the final refinement step
};
std::vector<BaseResonance> base_resonances(const SampledFunction& S0, ThetaClass cls, double beta_max,
                                           const GLOptions& opt, double* fit_error = nullptr);

// S(k;0) prod_s ((k + i gamma_s)/(k - i gamma_s))^2 and its bound-state poles.
SampledFunction member_scattering(const SampledFunction& S0, const std::vector<BaseResonance>& added);
std::vector<Pole> member_poles(const std::vector<BaseResonance>& added);

// G(x, y) evaluated directly (slow, for spot checks).
double gl_kernel(const SampledFunction& absF, const BoundStateSet& bound_states, ThetaClass cls, double x, double y,
                 const GLOptions& opt = {});

// G on the grid x_i = i h, i = 0..n: G(x_i, x_m) = C(|i-m| h) +- C((i+m) h) + bound-state terms.
struct GLKernelTable {
    double h = 0.0;
    int n = 0;
    ThetaClass cls = ThetaClass::NonDirichlet;
    std::vector<double> C;  // index 0..2n
    BoundStateSet bound_states;
    double tail_residual = 0.0;
    double at(int i, int m) const;
};
GLKernelTable gl_kernel_table(const SampledFunction& absF, const BoundStateSet& bound_states, ThetaClass cls,
                              double h, int n, const GLOptions& opt = {});

struct GLSolution {
    double h = 0.0;
    int n = 0;
    std::vector<double> diagonal;  // A(x_i, x_i)
    double max_residual = 0.0;
};
GLSolution solve_gl(const GLKernelTable& G);

// V = 2 dA(x,x)/dx as cell averages, cot(theta) = -A(0,0) for the non-Dirichlet class.
OperatorSpec extract_potential_and_theta(const std::vector<double>& diagonal, double b, ThetaClass cls);

OperatorSpec invert_modulus(const SampledFunction& absF, const BoundStateSet& bound_states, ThetaClass cls,
                            double bmax, int cells, const GLOptions& opt = {});

// sup |(|F_spec| - absF)| / max(1, absF) over every `stride`-th grid point.
double modulus_mismatch(const OperatorSpec& spec, const SampledFunction& absF, std::size_t stride);

struct FamilyMember {
    unsigned mask = 0;  // bit s set: eligible_betas[s] added as a bound state
    OperatorSpec spec;
    BoundStateSet bound_states;
    double modulus_error = 0.0;
};

struct SolutionFamily {
    ThetaClass theta_class = ThetaClass::Undetermined;
    OperatorSpec base;
    std::vector<BaseResonance> resonances;
    std::vector<double> eligible_betas;
    std::vector<FamilyMember> members;
    int M = 0;
    double max_modulus_error = 0.0;
    double outer_mismatch = 0.0;  // outer function against the direct base solve, relative
    double base_tail_residual = 0.0;
    double outer_tail_residual = 0.0;
    double fit_error = 0.0;
};

SolutionFamily enumerate_solutions(const SampledFunction& absF, double beta_max, double bmax, int cells,
                                   const GLOptions& opt = {});

}  // namespace halfline
