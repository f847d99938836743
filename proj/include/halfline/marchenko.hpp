#pragma once

#include <limits>
#include <vector>

#include "halfline/direct.hpp"
#include "halfline/potential.hpp"
#include "halfline/sampled.hpp"

namespace halfline {

enum class CaseTag { I, II, III, Undetermined };

const char* to_string(CaseTag t);

struct Pole {
    double gamma = 0.0;
    cplx residue;
    double m = 0.0;  // sqrt |Im residue|
};

struct CaseDetection {
    CaseTag tag = CaseTag::Undetermined;
    ThetaClass theta_class = ThetaClass::Undetermined;  // from residue signs (case I only)
    std::vector<Pole> poles;
    cplx s_at_zero;
    double fit_error = 0.0;  // relative max error of the rational fit
    std::size_t degree = 0;
};

struct MarchenkoOptions {
    double taper_fraction = 0.05;
    int tail_terms = 7;
    double tail_lambda = 1.0;
    // Upper bound on the support of V. Case detection fits S(k) e^{2ik support}, which stays
    // bounded off the axis, and the tail models jumps up to this point. 0 disables the former
    // and uses half the largest y for the latter.
    double support = 0.0;
    double fit_kmax = 40.0;  // rational fit uses |k| <= fit_kmax
    double fit_step = 0.05;
    double fit_tol = 1e-12;
    std::size_t fit_max_degree = 200;
    double dirichlet_threshold = 1e-4;
    double dirichlet_kmax = 10.0;
    double theta_kmin = 0.5, theta_kmax = 10.0;
    int theta_points = 20;
};

CaseDetection detect_case(const SampledFunction& S, const MarchenkoOptions& opt = {});

ThetaClass theta_class_from_residue(cplx residue);

// M(y) for the given class; poles contribute m^2 e^{-gamma y}. tail_residual receives
// max |data - tail model| over the tapered band, a measure of the truncation error.
std::vector<double> marchenko_kernel(const SampledFunction& S, const std::vector<Pole>& poles, ThetaClass cls,
                                     const std::vector<double>& y, const MarchenkoOptions& opt = {},
                                     double* tail_residual = nullptr);

// Kernel tabulated at t_j = j h, j = 0..4n, and the solution on x_i = i h.
struct MarchenkoSolution {
    double h = 0.0;
    int n = 0;
    std::vector<double> diagonal;              // K(x_i, x_i), i = 0..n
    std::vector<std::vector<double>> leading;  // K(x_i, y_m), m = i..2n-i, for i = 0, 1, 2
    double max_residual = 0.0;                 // of the discrete systems
};

// One row K(x_i, y_m), m = i..2n-i; the support K(x,y) = 0 for x + y > 2 b_max truncates the integral.
std::vector<double> solve_marchenko_row(const std::vector<double>& M, double h, int n, int i, double* residual);
MarchenkoSolution solve_marchenko(const std::vector<double>& M, double h, int n);

// Piecewise-constant V = -2 dK(x,x)/dx from the diagonal at the cell edges.
Potential extract_potential(const std::vector<double>& diagonal, double b);

// f(k,0), f'(k,0) from K(0,y) and its x-derivative.
BoundaryTrace trace_from_kernel(const MarchenkoSolution& K, double k);

// sup |S(k) f(k,0) - f(-k,0)| / sup |f(k,0)| over 0 < k <= dirichlet_kmax.
double dirichlet_deviation(const MarchenkoSolution& K, const SampledFunction& S, const MarchenkoOptions& opt = {});

struct ThetaRecovery {
    Boundary boundary;
    double dirichlet_deviation = 0.0;
    double cot_spread = 0.0;
};
ThetaRecovery recover_theta(const MarchenkoSolution& K, const SampledFunction& S, const MarchenkoOptions& opt = {},
                            ThetaClass known = ThetaClass::Undetermined);

struct Reconstruction {
    OperatorSpec spec;
    BoundStateSet bound_states;
    double kernel_residual = 0.0;
    double s_error = std::numeric_limits<double>::quiet_NaN();  // direct re-solve vs data, subsampled grid
};

struct InversionResult {
    CaseTag tag = CaseTag::Undetermined;
    CaseDetection detection;
    std::vector<Reconstruction> solutions;
    double dirichlet_deviation = std::numeric_limits<double>::quiet_NaN();
    double cot_spread = std::numeric_limits<double>::quiet_NaN();
    double jost_relation_error = std::numeric_limits<double>::quiet_NaN();  // case III: F2 = k f1(k,0)
    double integral_difference = std::numeric_limits<double>::quiet_NaN();  // case III: int V1 - int V2
    double tail_residual = 0.0;
};

InversionResult invert_scattering(const SampledFunction& S, double bmax, int cells, const MarchenkoOptions& opt = {});
// Case I with the bound-state poles and the boundary class supplied by the caller.
Reconstruction invert_with_poles(const SampledFunction& S, const std::vector<Pole>& poles, ThetaClass cls, double bmax,
                                 int cells, const MarchenkoOptions& opt = {}, double* tail_residual = nullptr);

InversionResult invert_case_iii(const SampledFunction& S, double bmax, int cells, const MarchenkoOptions& opt = {});

// Right reflection coefficient R(k) on k >= 0 to the potential on [0, bmax].
Potential full_line_marchenko(const SampledFunction& R, double bmax, int cells, const MarchenkoOptions& opt = {});

// sup |S_spec - S| over every `stride`-th grid point except k = 0.
double scattering_mismatch(const OperatorSpec& spec, const SampledFunction& S, std::size_t stride);

}  // namespace halfline
